#include "driftbench/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "driftbench/detectors.hpp"
#include "driftbench/stream_generator.hpp"

namespace driftbench {

int effective_threads(int requested) {
    int threads = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (const char* env = std::getenv("DRIFTBENCH_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) threads = std::min(threads, cap);
    }
    return threads;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    threads = static_cast<int>(
        std::min(static_cast<std::size_t>(effective_threads(threads)), count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

generate_summary generate_streams(const manifest& m, const std::filesystem::path& out_dir,
                                  bool force, int threads) {
    namespace fs = std::filesystem;
    if (fs::exists(out_dir) && !fs::is_empty(out_dir) && !force)
        throw io_error("output directory " + out_dir.string() +
                       " is not empty (use --force to overwrite)");
    fs::create_directories(out_dir);

    parallel_for(m.entries.size(), threads, [&](std::size_t i) {
        const auto& entry = m.entries[i];
        stream_generator gen(entry.config);
        const auto instances = gen.generate_all();
        write_stream_csv(out_dir / (entry.id + ".csv"), instances, entry.config.n_features);
        write_sidecar_json(out_dir / (entry.id + ".json"), entry.id, entry.config);
    });

    generate_summary summary;
    summary.streams_written = static_cast<int>(m.entries.size());
    summary.manifest_copy = out_dir / "manifest.json";
    std::ofstream copy(summary.manifest_copy, std::ios::binary);
    if (!copy) throw io_error("cannot write manifest copy");
    copy << manifest_to_json(m);
    return summary;
}

std::vector<loaded_stream> load_streams(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    std::vector<fs::path> sidecars;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".json" && entry.path().filename() != "manifest.json")
            sidecars.push_back(entry.path());
    }
    std::sort(sidecars.begin(), sidecars.end());

    std::vector<loaded_stream> out(sidecars.size());
    parallel_for(sidecars.size(), 0, [&](std::size_t i) {
        auto [id, config] = read_sidecar_json(sidecars[i]);
        loaded_stream ls;
        ls.id = std::move(id);
        ls.config = config;
        fs::path csv = sidecars[i];
        csv.replace_extension(".csv");
        ls.instances = read_stream_csv(csv);
        if (static_cast<std::int64_t>(ls.instances.size()) != config.length)
            throw io_error("stream length mismatch for " + ls.id);
        out[i] = std::move(ls);
    });
    return out;
}

namespace {

void fill_stream_columns(result_row& row, const loaded_stream& stream) {
    row.stream_id = stream.id;
    row.n_classes = stream.config.n_classes;
    row.n_features = stream.config.n_features;
    if (stream.config.drift) {
        row.category = to_string(stream.config.drift->category);
        row.difficulty = stream.config.drift->difficulty;
        row.speed = to_string(stream.config.drift->speed);
    }
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

}  // namespace

std::vector<result_row> run_detect(const std::vector<loaded_stream>& streams,
                                   const detect_options& opts,
                                   std::vector<run_timing>* timings) {
    for (const auto& name : opts.detectors) make_detector(name);  // validate names up front

    std::vector<std::vector<result_row>> per_stream(streams.size());
    std::vector<std::vector<run_timing>> per_stream_timing(streams.size());

    parallel_for(streams.size(), opts.threads, [&](std::size_t i) {
        const auto& stream = streams[i];
        const auto start = std::chrono::steady_clock::now();

        learner_options model_opts;
        model_opts.tree = opts.tree;
        ht_learner model(stream.config.n_features, stream.config.n_classes, model_opts);
        const auto preq = prequential_run(stream.instances, model);
        per_stream_timing[i].push_back({stream.id, "ht", elapsed_ms(start)});

        ground_truth truth;
        truth.detection_range = opts.detection_range;
        if (stream.config.drift) truth.drift_position = stream.config.drift->position;

        for (const auto& name : opts.detectors) {
            const auto det_start = std::chrono::steady_clock::now();
            auto detector = make_detector(name, mix_seed(stream.config.seed, fnv1a(name)));

            detection_log log;
            log.stream_id = stream.id;
            log.detector_id = name;
            for (std::size_t t = 0; t < preq.error_bits.size(); ++t) {
                const auto status = detector->update(preq.error_bits[t]);
                if (status == detector_status::drift)
                    log.alarms.push_back(static_cast<std::int64_t>(t));
                else if (status == detector_status::warning)
                    log.warnings.push_back(static_cast<std::int64_t>(t));
            }

            result_row row;
            fill_stream_columns(row, stream);
            row.detector = name;
            row.counts = score_detections(log, truth);
            if (!log.alarms.empty()) row.first_alarm = log.alarms.front();
            per_stream[i].push_back(std::move(row));
            per_stream_timing[i].push_back({stream.id, name, elapsed_ms(det_start)});
        }
    });

    std::vector<result_row> rows;
    for (auto& batch : per_stream)
        for (auto& row : batch) rows.push_back(std::move(row));
    if (timings)
        for (auto& batch : per_stream_timing)
            for (auto& t : batch) timings->push_back(t);
    return rows;
}

std::vector<learn_output> run_learn(const std::vector<loaded_stream>& streams,
                                    const learn_options& opts,
                                    std::vector<run_timing>* timings) {
    for (const auto& name : opts.learners)
        make_learner(name, 2, 2, opts.model);  // validate names up front

    struct pair_job {
        std::size_t stream;
        std::size_t learner;
    };
    std::vector<pair_job> jobs;
    for (std::size_t s = 0; s < streams.size(); ++s)
        for (std::size_t l = 0; l < opts.learners.size(); ++l) jobs.push_back({s, l});

    std::vector<learn_output> out(jobs.size());
    std::vector<run_timing> times(jobs.size());

    parallel_for(jobs.size(), opts.threads, [&](std::size_t j) {
        const auto& stream = streams[jobs[j].stream];
        const auto& name = opts.learners[jobs[j].learner];
        const auto start = std::chrono::steady_clock::now();

        auto model = make_learner(name, stream.config.n_features, stream.config.n_classes,
                                  opts.model);
        const auto preq = prequential_run(stream.instances, *model, opts.window);

        learn_output& lo = out[j];
        lo.summary.stream_id = stream.id;
        lo.summary.learner = name;
        lo.summary.n_classes = stream.config.n_classes;
        lo.summary.n_features = stream.config.n_features;
        if (stream.config.drift) {
            lo.summary.category = to_string(stream.config.drift->category);
            lo.summary.difficulty = stream.config.drift->difficulty;
            lo.summary.speed = to_string(stream.config.drift->speed);
        }
        lo.summary.overall_accuracy = preq.overall_accuracy;
        lo.summary.window_mean = preq.series_mean;
        lo.summary.window_std = preq.series_std;
        lo.series = preq.series;
        times[j] = {stream.id, name, elapsed_ms(start)};
    });

    if (timings) timings->insert(timings->end(), times.begin(), times.end());
    return out;
}

void write_timings_csv(const std::filesystem::path& path, const std::vector<run_timing>& timings) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path.string());
    out << "stream_id,algorithm,wall_ms\n";
    char buf[64];
    for (const auto& t : timings) {
        std::snprintf(buf, sizeof(buf), "%.3f", t.wall_ms);
        out << t.stream_id << "," << t.algorithm << "," << buf << "\n";
    }
}

namespace {

std::string group_key_of(const result_row& row, const std::string& key) {
    if (key == "detector") return row.detector;
    if (key == "category") return row.category;
    if (key == "difficulty") return row.difficulty;
    if (key == "speed") return row.speed;
    if (key == "n_classes") return std::to_string(row.n_classes);
    if (key == "n_features") return std::to_string(row.n_features);
    throw config_error(
        "unknown group key '" + key +
        "' (valid: detector, category, difficulty, speed, n_classes, n_features)");
}

std::string pct(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f%%", 100.0 * v);
    return buf;
}

std::string fixed(double v, int digits = 2) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

}  // namespace

void write_report(const std::vector<result_row>& results,
                  const std::vector<accuracy_row>& accuracy, const report_options& opts,
                  const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    std::vector<result_row> drifting, stationary;
    for (const auto& row : results)
        (row.category == "stationary" ? stationary : drifting).push_back(row);

    // (group, detector) -> pooled counts, in first-seen order
    std::vector<std::pair<std::string, std::string>> order;
    std::map<std::pair<std::string, std::string>, confusion_counts> pooled;
    std::map<std::pair<std::string, std::string>, std::int64_t> stream_counts;
    for (const auto& row : drifting) {
        const auto key = std::make_pair(group_key_of(row, opts.group_by), row.detector);
        if (pooled.find(key) == pooled.end()) order.push_back(key);
        pooled[key] += row.counts;
        stream_counts[key] += 1;
    }
    std::sort(order.begin(), order.end());

    {
        std::ofstream csv(out_dir / ("by_" + opts.group_by + ".csv"), std::ios::binary);
        if (!csv) throw io_error("cannot write report table");
        csv << opts.group_by
            << ",detector,streams,tp,fp,fn,tn,precision,recall,f1,delay\n";
        for (const auto& key : order) {
            const auto& c = pooled[key];
            const auto delay = mean_delay(c);
            csv << key.first << "," << key.second << "," << stream_counts[key] << "," << c.tp
                << "," << c.fp << "," << c.fn << "," << c.tn << "," << fixed(precision(c), 6)
                << "," << fixed(recall(c), 6) << "," << fixed(f1(c), 6) << ","
                << (delay ? fixed(*delay, 1) : "") << "\n";
        }
    }
    {
        std::ofstream txt(out_dir / ("by_" + opts.group_by + ".txt"), std::ios::binary);
        txt << "drift detection by " << opts.group_by << "\n";
        std::string current;
        char line[256];
        for (const auto& key : order) {
            if (key.first != current) {
                current = key.first;
                txt << "\n== " << opts.group_by << ": " << current << "\n";
                std::snprintf(line, sizeof(line), "%-10s %10s %10s %10s %10s\n", "detector",
                              "precision", "recall", "f1", "delay");
                txt << line;
            }
            const auto& c = pooled[key];
            const auto delay = mean_delay(c);
            std::snprintf(line, sizeof(line), "%-10s %10s %10s %10s %10s\n", key.second.c_str(),
                          pct(precision(c)).c_str(), pct(recall(c)).c_str(), pct(f1(c)).c_str(),
                          delay ? fixed(*delay, 0).c_str() : "-");
            txt << line;
        }
    }

    if (!stationary.empty()) {
        std::map<std::string, confusion_counts> pooled_stat;
        std::map<std::string, std::int64_t> streams_stat;
        for (const auto& row : stationary) {
            pooled_stat[row.detector] += row.counts;
            streams_stat[row.detector] += 1;
        }
        std::ofstream csv(out_dir / "stationary.csv", std::ios::binary);
        csv << "detector,streams,tn_mean,fp_mean\n";
        std::ofstream txt(out_dir / "stationary.txt", std::ios::binary);
        txt << "stationary streams: mean alarms per stream\n";
        char line[256];
        std::snprintf(line, sizeof(line), "%-10s %10s %12s\n", "detector", "tn", "fp");
        txt << line;
        for (const auto& [det, counts] : pooled_stat) {
            const double n = static_cast<double>(streams_stat[det]);
            const double tn_mean = static_cast<double>(counts.tn) / n;
            const double fp_mean = static_cast<double>(counts.fp) / n;
            csv << det << "," << streams_stat[det] << "," << fixed(tn_mean, 4) << ","
                << fixed(fp_mean, 2) << "\n";
            std::snprintf(line, sizeof(line), "%-10s %10s %12s\n", det.c_str(),
                          fixed(tn_mean, 2).c_str(), fixed(fp_mean, 2).c_str());
            txt << line;
        }
    }

    if (!accuracy.empty()) {
        struct acc_cell {
            double sum = 0.0, sum_sq = 0.0, within_std_sum = 0.0;
            std::int64_t n = 0;
        };
        std::map<std::pair<std::string, std::string>, acc_cell> cells;
        for (const auto& row : accuracy) {
            auto& cell = cells[{row.category, row.learner}];
            cell.sum += row.overall_accuracy;
            cell.sum_sq += row.overall_accuracy * row.overall_accuracy;
            cell.within_std_sum += row.window_std;
            cell.n += 1;
        }
        std::ofstream csv(out_dir / "accuracy_by_category.csv", std::ios::binary);
        csv << "category,learner,streams,accuracy_mean,accuracy_std_across_streams,"
               "window_std_within_stream_mean\n";
        for (const auto& [key, cell] : cells) {
            const double n = static_cast<double>(cell.n);
            const double mean = cell.sum / n;
            const double var = cell.n > 1 ? std::max(0.0, (cell.sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
            csv << key.first << "," << key.second << "," << cell.n << "," << fixed(mean, 6) << ","
                << fixed(std::sqrt(var), 6) << "," << fixed(cell.within_std_sum / n, 6) << "\n";
        }
    }
}

}  // namespace driftbench
