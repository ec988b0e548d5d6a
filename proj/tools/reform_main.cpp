// Command-line front end: train, detect, evaluate, characterize, synth, render.

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv)
{
    using namespace reform::cli;

    CLI::App app{"Conversational group (F-formation) detection from positions and body orientations"};
    app.require_subcommand(1);

    TrainOptions train;
    auto* t = app.add_subcommand("train", "Train a pairwise classifier on a train split");
    t->add_option("--data", train.data, "Dataset path")->required();
    t->add_option("--format", train.format, "canonical|salsa|babble")
        ->check(CLI::IsMember({"canonical", "salsa", "babble"}));
    t->add_option("--kind", train.kind, "knn|trees|logreg")
        ->check(CLI::IsMember({"knn", "trees", "logreg"}));
    t->add_option("--split", train.split, "Fraction of frames used for training, in (0, 1)");
    t->add_option("--seed", train.seed, "Seed for the split and the classifier");
    t->add_option("--out", train.out, "Model file to write")->required();
    t->add_option("--test-out", train.test_out, "Optional canonical file for held-out frames");
    t->add_option("--k", train.hyper.knn.k, "Neighbours for weighted KNN");
    t->add_option("--trees", train.hyper.trees.n_trees, "Trees in the bagged ensemble");
    t->add_option("--max-depth", train.hyper.trees.max_depth, "Tree depth limit, 0 = unlimited");
    t->add_option("--min-leaf", train.hyper.trees.min_leaf, "Minimum samples per tree leaf");
    bool no_bootstrap = false;
    t->add_flag("--no-bootstrap", no_bootstrap, "Grow every tree on the full training set");
    t->add_option("--l2", train.hyper.logistic.l2, "L2 penalty for logistic regression");
    t->add_option("--lr", train.hyper.logistic.learning_rate, "Gradient descent step size");
    t->add_option("--epochs", train.hyper.logistic.max_epochs, "Gradient descent epoch cap");

    DetectOptions det;
    auto* d = app.add_subcommand("detect", "Detect groups in every frame");
    d->add_option("--model", det.model, "Model file")->required();
    d->add_option("--data", det.data, "Dataset path")->required();
    d->add_option("--format", det.format, "canonical|salsa|babble")
        ->check(CLI::IsMember({"canonical", "salsa", "babble"}));
    d->add_option("--out", det.out, "Canonical file receiving the detected groups")->required();
    d->add_option("--mode", det.mode, "intersection|union")
        ->check(CLI::IsMember({"intersection", "union"}));
    d->add_option("--jobs", det.jobs, "Worker threads, 0 = all cores");

    EvaluateOptions ev;
    auto* e = app.add_subcommand("evaluate", "Score detections against ground truth");
    e->add_option("--detections", ev.detections, "Canonical file with detected groups")->required();
    e->add_option("--truth", ev.truth, "Canonical file with ground-truth groups")->required();
    e->add_option("--tolerance", ev.tolerance, "Match tolerance T in (0, 1]");
    e->add_option("--matching", ev.matching, "greedy|optimal")
        ->check(CLI::IsMember({"greedy", "optimal"}));
    e->add_option("--out", ev.out, "Optional JSON report path");

    CharacterizeOptions ch;
    auto* c = app.add_subcommand("characterize", "Per-size symmetry and tightness");
    c->add_option("--data", ch.data, "Dataset path")->required();
    c->add_option("--format", ch.format, "canonical|salsa|babble")
        ->check(CLI::IsMember({"canonical", "salsa", "babble"}));
    c->add_option("--use", ch.use, "truth|detections")->check(CLI::IsMember({"truth", "detections"}));
    c->add_option("--out", ch.out, "JSON table path");
    c->add_option("--svg", ch.svg, "Optional bar chart");

    SynthOptions sy;
    auto* s = app.add_subcommand("synth", "Generate a labeled synthetic dataset");
    s->add_option("--config", sy.config, "Generator config (JSON); defaults when omitted");
    s->add_option("--out", sy.out, "Canonical file to write")->required();

    RenderOptions re;
    auto* r = app.add_subcommand("render", "Draw one frame as SVG");
    r->add_option("--data", re.data, "Dataset path")->required();
    r->add_option("--format", re.format, "canonical|salsa|babble")
        ->check(CLI::IsMember({"canonical", "salsa", "babble"}));
    r->add_option("--frame", re.frame, "Frame id")->required();
    r->add_option("--svg", re.svg, "Output SVG")->required();

    CLI11_PARSE(app, argc, argv);
    train.hyper.trees.bootstrap = !no_bootstrap;

    try {
        if (t->parsed()) {
            run_train(train, std::cout);
        } else if (d->parsed()) {
            run_detect(det, std::cout);
        } else if (e->parsed()) {
            run_evaluate(ev, std::cout);
        } else if (c->parsed()) {
            run_characterize(ch, std::cout);
        } else if (s->parsed()) {
            run_synth(sy, std::cout);
        } else if (r->parsed()) {
            run_render(re, std::cout);
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    }
    return 0;
}
