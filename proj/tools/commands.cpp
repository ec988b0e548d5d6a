#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include <json.hpp>

#include "reform/characterization.hpp"
#include "reform/evaluation.hpp"
#include "reform/features.hpp"
#include "reform/io.hpp"
#include "reform/reconstruction.hpp"
#include "reform/svg.hpp"
#include "reform/synth.hpp"

namespace reform::cli {

using nlohmann::json;

namespace {

// Runs fn(i) for i in [0, n) on a bounded pool; results are written by index
// so output order never depends on scheduling.
template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn fn)
{
    if (jobs == 0) {
        jobs = std::max(1u, std::thread::hardware_concurrency());
    }
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

std::vector<FrameGroups> groups_of(const CanonicalDataset& ds, const std::string& label)
{
    std::vector<FrameGroups> out;
    for (const auto& f : ds.frames) {
        if (!f.truth) {
            throw Error(label + ": frame " + std::to_string(f.frame_id) + " has no groups");
        }
        out.emplace_back(f.frame_id, *f.truth);
    }
    return out;
}

}  // namespace

void run_train(const TrainOptions& opt, std::ostream& out)
{
    if (!(opt.split > 0.0 && opt.split < 1.0)) {
        throw Error("--split must lie strictly between 0 and 1");
    }
    const auto kind = parse_classifier_kind(opt.kind);
    const CanonicalDataset ds = load_dataset(opt.data, opt.format);
    if (ds.frames.size() < 2) {
        throw Error("need at least 2 frames to split into train and test");
    }
    for (const auto& f : ds.frames) {
        if (!f.truth) {
            throw Error("frame " + std::to_string(f.frame_id) + " has no ground-truth groups");
        }
    }

    std::vector<std::size_t> order(ds.frames.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::mt19937_64 rng(opt.seed);
    std::shuffle(order.begin(), order.end(), rng);
    const auto n_train = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::llround(opt.split * static_cast<double>(order.size()))), 1,
        order.size() - 1);

    std::vector<Frame> train_frames;
    std::vector<Frame> test_frames;
    for (std::size_t i = 0; i < order.size(); ++i) {
        (i < n_train ? train_frames : test_frames).push_back(ds.frames[order[i]]);
    }
    const auto train_pairs = pairwise_deconstruct(train_frames);
    const auto test_pairs = pairwise_deconstruct(test_frames);

    const TrainedModel model = train(train_pairs, kind, opt.hyper, opt.seed);
    save_model(model, opt.out);
    if (!opt.test_out.empty()) {
        save_canonical(make_dataset(test_frames), opt.test_out);
    }

    out << "kind: " << to_string(kind) << '\n';
    out << "train_frames: " << train_frames.size() << '\n';
    out << "test_frames: " << test_frames.size() << '\n';
    out << "train_pairs: " << train_pairs.size() << '\n';
    out << "test_pairs: " << test_pairs.size() << '\n';
    out << "train_pairwise_accuracy: " << pairwise_accuracy(model, train_pairs) << '\n';
    if (!test_pairs.empty()) {
        out << "test_pairwise_accuracy: " << pairwise_accuracy(model, test_pairs) << '\n';
        out << "test_majority_baseline: " << majority_baseline(test_pairs) << '\n';
    }
    out << "model: " << opt.out << '\n';
}

void run_detect(const DetectOptions& opt, std::ostream& out)
{
    const TrainedModel model = load_model(opt.model);
    const MergeMode mode = parse_merge_mode(opt.mode);
    CanonicalDataset ds = load_dataset(opt.data, opt.format);

    std::vector<GroupSet> detected(ds.frames.size());
    const auto start = std::chrono::steady_clock::now();
    parallel_for(ds.frames.size(), opt.jobs,
                 [&](std::size_t i) { detected[i] = detect(model, ds.frames[i], mode); });
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    for (std::size_t i = 0; i < ds.frames.size(); ++i) {
        ds.frames[i].truth = std::move(detected[i]);
    }
    save_canonical(ds, opt.out);
    out << "frames: " << ds.frames.size() << '\n';
    out << "seconds: " << seconds << '\n';
    out << "frames_per_second: "
        << (seconds > 0.0 ? static_cast<double>(ds.frames.size()) / seconds : 0.0) << '\n';
}

void run_evaluate(const EvaluateOptions& opt, std::ostream& out)
{
    const Tolerance tol = Tolerance::from_double(opt.tolerance);
    MatchStrategy strategy = MatchStrategy::Greedy;
    if (opt.matching == "optimal") {
        strategy = MatchStrategy::Optimal;
    } else if (opt.matching != "greedy") {
        throw Error("--matching must be greedy or optimal");
    }
    const auto det = groups_of(load_canonical(opt.detections), "detections");
    const auto tru = groups_of(load_canonical(opt.truth), "truth");
    const EvalReport r = evaluate(det, tru, tol, strategy);

    json frames = json::array();
    for (const auto& f : r.per_frame) {
        frames.push_back({{"frame_id", f.frame_id},
                          {"matched", f.matched},
                          {"detected", f.detected},
                          {"truth", f.truth}});
    }
    json doc = {
        {"summary",
         {{"precision", r.precision},
          {"recall", r.recall},
          {"f1", r.f1},
          {"matched", r.matched},
          {"detected", r.detected},
          {"truth", r.truth},
          {"tolerance", {{"numerator", tol.numerator()}, {"denominator", tol.denominator()}}},
          {"matching", opt.matching}}},
        {"frames", std::move(frames)},
    };
    if (!opt.out.empty()) {
        write_text_file(opt.out, doc.dump(1) + "\n");
    }
    out << "precision: " << r.precision << '\n';
    out << "recall: " << r.recall << '\n';
    out << "f1: " << r.f1 << '\n';
    out << "matched: " << r.matched << " detected: " << r.detected << " truth: " << r.truth << '\n';
}

void run_characterize(const CharacterizeOptions& opt, std::ostream& out)
{
    if (opt.use != "truth" && opt.use != "detections") {
        throw Error("--use must be truth or detections");
    }
    const CanonicalDataset ds = load_dataset(opt.data, opt.format);
    const auto stats = characterize_corpus(ds.frames, groups_of(ds, opt.use));

    json rows = json::array();
    for (const auto& s : stats) {
        rows.push_back({{"size", s.size},
                        {"count", s.count},
                        {"symmetry_count", s.symmetry_count},
                        {"mean_symmetry_deg", s.mean_symmetry},
                        {"mean_tightness_m", s.mean_tightness}});
    }
    json doc = {{"source", opt.use}, {"sizes", std::move(rows)}};
    if (!opt.out.empty()) {
        write_text_file(opt.out, doc.dump(1) + "\n");
    }
    if (!opt.svg.empty()) {
        write_text_file(opt.svg, render_characterization_svg(stats));
    }
    out << "size\tcount\tmean_symmetry_deg\tmean_tightness_m\n";
    for (const auto& s : stats) {
        out << s.size << '\t' << s.count << '\t' << s.mean_symmetry << '\t' << s.mean_tightness
            << '\n';
    }
}

void run_synth(const SynthOptions& opt, std::ostream& out)
{
    const SynthConfig config =
        opt.config.empty() ? SynthConfig{} : parse_synth_config(read_text_file(opt.config));
    const CanonicalDataset ds = generate_synthetic(config);
    save_canonical(ds, opt.out);
    out << "frames: " << ds.frames.size() << '\n';
}

void run_render(const RenderOptions& opt, std::ostream& out)
{
    const CanonicalDataset ds = load_dataset(opt.data, opt.format);
    auto it = std::find_if(ds.frames.begin(), ds.frames.end(),
                           [&](const Frame& f) { return f.frame_id == opt.frame; });
    if (it == ds.frames.end()) {
        throw Error("no frame with id " + std::to_string(opt.frame));
    }
    write_text_file(opt.svg, render_frame_svg(*it, it->truth.value_or(GroupSet{})));
    out << "wrote " << opt.svg << '\n';
}

}  // namespace reform::cli
