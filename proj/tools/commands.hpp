#ifndef REFORM_TOOLS_COMMANDS_HPP
#define REFORM_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "reform/classifiers.hpp"

namespace reform::cli {

struct TrainOptions {
    std::string data;
    std::string format = "canonical";
    std::string kind = "trees";
    double split = 0.6;
    std::uint64_t seed = 0;
    std::string out;
    std::string test_out;
    Hyperparams hyper;
};

struct DetectOptions {
    std::string model;
    std::string data;
    std::string format = "canonical";
    std::string out;
    std::string mode = "intersection";
    unsigned jobs = 0;  // 0 = hardware concurrency
};

struct EvaluateOptions {
    std::string detections;
    std::string truth;
    double tolerance = 0.6667;
    std::string matching = "greedy";
    std::string out;
};

struct CharacterizeOptions {
    std::string data;
    std::string format = "canonical";
    std::string use = "truth";
    std::string out;
    std::string svg;
};

struct SynthOptions {
    std::string config;
    std::string out;
};

struct RenderOptions {
    std::string data;
    std::string format = "canonical";
    std::int64_t frame = 0;
    std::string svg;
};

void run_train(const TrainOptions& opt, std::ostream& out);
void run_detect(const DetectOptions& opt, std::ostream& out);
void run_evaluate(const EvaluateOptions& opt, std::ostream& out);
void run_characterize(const CharacterizeOptions& opt, std::ostream& out);
void run_synth(const SynthOptions& opt, std::ostream& out);
void run_render(const RenderOptions& opt, std::ostream& out);

}  // namespace reform::cli

#endif  // REFORM_TOOLS_COMMANDS_HPP
