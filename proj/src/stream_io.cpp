#include "driftbench/stream_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace driftbench {

namespace {

using nlohmann::json;

std::string format_double(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw io_error("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open for reading: " + path.string());
    return in;
}

json drift_to_json(const drift_spec& d) {
    return json{{"category", to_string(d.category)},
                {"difficulty", d.difficulty},
                {"speed", to_string(d.speed)},
                {"position", d.position},
                {"width", d.width},
                {"affected_classes", d.affected_classes},
                {"scope_fraction", d.scope_fraction},
                {"reappear_width", d.reappear_width}};
}

drift_spec drift_from_json(const json& j) {
    drift_spec d;
    d.category = category_from_string(j.at("category").get<std::string>());
    d.difficulty = j.at("difficulty").get<std::string>();
    d.speed = speed_from_string(j.at("speed").get<std::string>());
    d.position = j.at("position").get<std::int64_t>();
    d.width = j.at("width").get<std::int64_t>();
    d.affected_classes = j.at("affected_classes").get<std::vector<int>>();
    d.scope_fraction = j.at("scope_fraction").get<double>();
    if (j.contains("reappear_width")) d.reappear_width = j.at("reappear_width").get<std::int64_t>();
    return d;
}

}  // namespace

void write_stream_csv(const std::filesystem::path& path, const std::vector<instance>& instances,
                      int n_features) {
    auto out = open_out(path);
    for (int f = 0; f < n_features; ++f) out << "f" << f << ",";
    out << "class\n";
    for (const auto& inst : instances) {
        for (double v : inst.features) out << format_double(v) << ",";
        out << inst.label << "\n";
    }
    if (!out) throw io_error("write failed: " + path.string());
}

std::vector<instance> read_stream_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw io_error("empty stream file: " + path.string());
    const auto header = split_csv_line(line);
    if (header.empty() || header.back() != "class")
        throw io_error("unexpected stream header in " + path.string());
    const std::size_t d = header.size() - 1;

    std::vector<instance> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != d + 1) throw io_error("ragged row in " + path.string());
        instance inst;
        inst.features.resize(d);
        for (std::size_t f = 0; f < d; ++f) inst.features[f] = std::stod(fields[f]);
        inst.label = std::stoi(fields[d]);
        out.push_back(std::move(inst));
    }
    return out;
}

void write_sidecar_json(const std::filesystem::path& path, const std::string& id,
                        const stream_config& config) {
    json j{{"id", id},
           {"generator", to_string(config.generator)},
           {"n_classes", config.n_classes},
           {"n_features", config.n_features},
           {"length", config.length},
           {"seed", config.seed},
           {"drift", config.drift ? drift_to_json(*config.drift) : json(nullptr)},
           {"format_version", kFormatVersion}};
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

std::pair<std::string, stream_config> read_sidecar_json(const std::filesystem::path& path) {
    auto in = open_in(path);
    json j = json::parse(in);
    if (j.at("format_version").get<int>() != kFormatVersion)
        throw io_error("unsupported sidecar format_version in " + path.string());
    stream_config cfg;
    cfg.generator = generator_from_string(j.at("generator").get<std::string>());
    cfg.n_classes = j.at("n_classes").get<int>();
    cfg.n_features = j.at("n_features").get<int>();
    cfg.length = j.at("length").get<std::int64_t>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("drift").is_null()) cfg.drift = drift_from_json(j.at("drift"));
    return {j.at("id").get<std::string>(), cfg};
}

void write_results_csv(const std::filesystem::path& path, const std::vector<result_row>& rows) {
    auto out = open_out(path);
    out << kResultsTag << "\n";
    out << "stream_id,detector,category,difficulty,speed,n_classes,n_features,"
           "tp,fp,fn,tn,delay_sum,first_alarm\n";
    for (const auto& r : rows) {
        out << r.stream_id << "," << r.detector << "," << r.category << "," << r.difficulty << ","
            << r.speed << "," << r.n_classes << "," << r.n_features << "," << r.counts.tp << ","
            << r.counts.fp << "," << r.counts.fn << "," << r.counts.tn << "," << r.counts.delay_sum
            << ",";
        if (r.first_alarm) out << *r.first_alarm;
        out << "\n";
    }
}

std::vector<result_row> read_results_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line).front() != kResultsTag)
        throw io_error("not a driftbench results file (or wrong version): " + path.string());
    std::getline(in, line);  // column header

    std::vector<result_row> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 13) throw io_error("ragged results row in " + path.string());
        result_row r;
        r.stream_id = f[0];
        r.detector = f[1];
        r.category = f[2];
        r.difficulty = f[3];
        r.speed = f[4];
        r.n_classes = std::stoi(f[5]);
        r.n_features = std::stoi(f[6]);
        r.counts.tp = std::stoll(f[7]);
        r.counts.fp = std::stoll(f[8]);
        r.counts.fn = std::stoll(f[9]);
        r.counts.tn = std::stoll(f[10]);
        r.counts.delay_sum = std::stoll(f[11]);
        if (!f[12].empty()) r.first_alarm = std::stoll(f[12]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_accuracy_csv(const std::filesystem::path& path, const std::vector<accuracy_row>& rows) {
    auto out = open_out(path);
    out << kAccuracyTag << "\n";
    out << "stream_id,learner,category,difficulty,speed,n_classes,n_features,"
           "overall_accuracy,window_mean,window_std\n";
    for (const auto& r : rows) {
        out << r.stream_id << "," << r.learner << "," << r.category << "," << r.difficulty << ","
            << r.speed << "," << r.n_classes << "," << r.n_features << ","
            << format_double(r.overall_accuracy) << "," << format_double(r.window_mean) << ","
            << format_double(r.window_std) << "\n";
    }
}

std::vector<accuracy_row> read_accuracy_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line).front() != kAccuracyTag)
        throw io_error("not a driftbench accuracy file (or wrong version): " + path.string());
    std::getline(in, line);

    std::vector<accuracy_row> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 10) throw io_error("ragged accuracy row in " + path.string());
        accuracy_row r;
        r.stream_id = f[0];
        r.learner = f[1];
        r.category = f[2];
        r.difficulty = f[3];
        r.speed = f[4];
        r.n_classes = std::stoi(f[5]);
        r.n_features = std::stoi(f[6]);
        r.overall_accuracy = std::stod(f[7]);
        r.window_mean = std::stod(f[8]);
        r.window_std = std::stod(f[9]);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace driftbench
