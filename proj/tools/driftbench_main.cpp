#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "driftbench/runner.hpp"
#include "driftbench/stream_generator.hpp"

namespace {

namespace fs = std::filesystem;
using namespace driftbench;

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

manifest load_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open manifest: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return manifest_from_json(buf.str());
}

int run(int argc, char** argv) {
    CLI::App app{"driftbench: drift-locality stream benchmark toolkit"};
    app.require_subcommand(1);

    // -------------------------------------------------------- manifest --
    auto* manifest_cmd = app.add_subcommand("manifest", "enumerate the benchmark grid");
    std::string manifest_out = "manifest.json";
    std::string gens = "rbf,rt", cats, diffs, speeds = "sudden,gradual,incremental";
    std::string classes = "2,3,5,10", features = "2,5,10";
    manifest_params params;
    manifest_cmd->add_option("--out", manifest_out, "manifest file to write");
    manifest_cmd->add_option("--generators", gens, "comma list: rbf,rt");
    manifest_cmd->add_option("--categories", cats, "comma list of drift categories");
    manifest_cmd->add_option("--difficulties", diffs, "comma list of difficulty names");
    manifest_cmd->add_option("--speeds", speeds, "comma list: sudden,gradual,incremental");
    manifest_cmd->add_option("--classes", classes, "comma list of class counts");
    manifest_cmd->add_option("--features", features, "comma list of feature counts");
    manifest_cmd->add_option("--seeds", params.seeds_per_config, "replicates per config");
    manifest_cmd->add_option("--base-seed", params.base_seed, "base seed");
    manifest_cmd->add_option("--length", params.length, "stream length");
    manifest_cmd->add_option("--position", params.position, "drift position");
    manifest_cmd->add_option("--width", params.width, "gradual/incremental window width");
    manifest_cmd->add_option("--range", params.detection_range, "detection range R");
    manifest_cmd->add_flag("--stationary-twins", params.stationary_twins,
                           "emit a drift-free twin per config");

    // -------------------------------------------------------- generate --
    auto* generate_cmd = app.add_subcommand("generate", "write stream CSVs from a manifest");
    std::string gen_manifest, gen_out;
    bool force = false;
    generate_cmd->add_option("--manifest", gen_manifest, "manifest file")->required();
    generate_cmd->add_option("--out", gen_out, "output directory")->required();
    generate_cmd->add_flag("--force", force, "overwrite an existing directory");

    // ---------------------------------------------------------- detect --
    auto* detect_cmd = app.add_subcommand("detect", "run drift detectors over streams");
    std::string det_streams, det_names, det_out = "results.csv";
    detect_options det_opts;
    detect_cmd->add_option("--streams", det_streams, "directory of generated streams")->required();
    detect_cmd->add_option("--detectors", det_names, "comma list of detector names")->required();
    detect_cmd->add_option("--range", det_opts.detection_range, "detection range R");
    detect_cmd->add_option("--out", det_out, "results CSV path");

    // ------------------------------------------------------------ learn --
    auto* learn_cmd = app.add_subcommand("learn", "run adaptive learners over streams");
    std::string learn_streams, learn_names = "ht,aht,ht-dw", learn_out = "acc";
    learn_options learn_opts;
    learn_cmd->add_option("--streams", learn_streams, "directory of generated streams")
        ->required();
    learn_cmd->add_option("--learners", learn_names, "comma list: ht,aht,ht-dw");
    learn_cmd->add_option("--window", learn_opts.window, "accuracy window size");
    learn_cmd->add_option("--out", learn_out, "output directory");

    // ----------------------------------------------------------- report --
    auto* report_cmd = app.add_subcommand("report", "aggregate results into tables");
    std::string rep_results, rep_accuracy, rep_out = "tables";
    report_options rep_opts;
    report_cmd->add_option("--results", rep_results, "results CSV from detect")->required();
    report_cmd->add_option("--accuracy", rep_accuracy, "summary CSV from learn");
    report_cmd->add_option("--group-by", rep_opts.group_by,
                           "detector|category|difficulty|speed|n_classes|n_features");
    report_cmd->add_option("--out", rep_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    if (manifest_cmd->parsed()) {
        params.generators.clear();
        for (const auto& g : split_list(gens)) params.generators.push_back(generator_from_string(g));
        if (!cats.empty()) {
            params.categories.clear();
            for (const auto& c : split_list(cats))
                params.categories.push_back(category_from_string(c));
        }
        params.difficulties = split_list(diffs);
        params.speeds.clear();
        for (const auto& s : split_list(speeds)) params.speeds.push_back(speed_from_string(s));
        params.class_counts.clear();
        for (const auto& c : split_list(classes)) params.class_counts.push_back(std::stoi(c));
        params.feature_counts.clear();
        for (const auto& f : split_list(features)) params.feature_counts.push_back(std::stoi(f));

        const auto m = enumerate_manifest(params);
        std::ofstream out(manifest_out, std::ios::binary);
        if (!out) throw io_error("cannot write " + manifest_out);
        out << manifest_to_json(m);
        std::cout << "manifest: " << m.entries.size() << " stream configs -> " << manifest_out
                  << "\n";
        return 0;
    }

    if (generate_cmd->parsed()) {
        const auto m = load_manifest(gen_manifest);
        const auto summary = generate_streams(m, gen_out, force);
        std::cout << "generated " << summary.streams_written << " streams in " << gen_out << "\n";
        return 0;
    }

    if (detect_cmd->parsed()) {
        det_opts.detectors = split_list(det_names);
        const auto streams = load_streams(det_streams);
        std::vector<run_timing> timings;
        const auto rows = run_detect(streams, det_opts, &timings);
        write_results_csv(det_out, rows);
        write_timings_csv(fs::path(det_out).replace_extension(".timings.csv"), timings);
        std::cout << "detect: " << streams.size() << " streams x " << det_opts.detectors.size()
                  << " detectors -> " << rows.size() << " rows in " << det_out << "\n";
        return 0;
    }

    if (learn_cmd->parsed()) {
        learn_opts.learners = split_list(learn_names);
        const auto streams = load_streams(learn_streams);
        std::vector<run_timing> timings;
        const auto outputs = run_learn(streams, learn_opts, &timings);

        fs::create_directories(learn_out);
        std::vector<accuracy_row> summaries;
        summaries.reserve(outputs.size());
        for (const auto& lo : outputs) {
            summaries.push_back(lo.summary);
            std::ofstream series(fs::path(learn_out) /
                                     (lo.summary.stream_id + "__" + lo.summary.learner + ".csv"),
                                 std::ios::binary);
            series << "t,window_accuracy\n";
            char buf[32];
            for (const auto& p : lo.series) {
                std::snprintf(buf, sizeof(buf), "%.6f", p.accuracy);
                series << p.t << "," << buf << "\n";
            }
        }
        write_accuracy_csv(fs::path(learn_out) / "summary.csv", summaries);
        write_timings_csv(fs::path(learn_out) / "timings.csv", timings);
        std::cout << "learn: " << outputs.size() << " runs -> " << learn_out << "\n";
        return 0;
    }

    if (report_cmd->parsed()) {
        const auto results = read_results_csv(rep_results);
        std::vector<accuracy_row> accuracy;
        if (!rep_accuracy.empty()) accuracy = read_accuracy_csv(rep_accuracy);
        write_report(results, accuracy, rep_opts, rep_out);
        std::cout << "report: " << results.size() << " rows grouped by " << rep_opts.group_by
                  << " -> " << rep_out << "\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "driftbench: " << e.what() << "\n";
        return 1;
    }
}
