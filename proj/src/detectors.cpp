#include "driftbench/detectors.hpp"

#include <algorithm>
#include <cmath>

namespace driftbench {

// ---------------------------------------------------------------- adwin --

adwin_detector::adwin_detector(config cfg) : cfg_(cfg) { rows_.resize(1); }

void adwin_detector::reset() {
    rows_.clear();
    rows_.resize(1);
    total_count_ = 0;
    total_sum_ = 0.0;
}

void adwin_detector::insert(int error_bit) {
    rows_[0].push_back({static_cast<double>(error_bit)});
    total_count_ += 1;
    total_sum_ += error_bit;
    // merge the two oldest buckets of any row that overflows
    for (std::size_t row = 0; row < rows_.size(); ++row) {
        if (rows_[row].size() <= static_cast<std::size_t>(cfg_.fanout)) break;
        if (row + 1 == rows_.size()) rows_.emplace_back();
        bucket merged{rows_[row][0].sum + rows_[row][1].sum};
        rows_[row].pop_front();
        rows_[row].pop_front();
        rows_[row + 1].push_back(merged);
    }
}

void adwin_detector::drop_oldest_bucket() {
    for (std::size_t row = rows_.size(); row-- > 0;) {
        if (rows_[row].empty()) continue;
        total_sum_ -= rows_[row].front().sum;
        total_count_ -= static_cast<std::int64_t>(1) << row;
        rows_[row].pop_front();
        return;
    }
}

// walks every bucket boundary oldest-to-newest; returns true and drops the
// oldest bucket when some cut violates the bound
bool adwin_detector::scan_cuts() {
    if (total_count_ < 2) return false;
    const double delta_prime = cfg_.delta / static_cast<double>(total_count_);
    const double log_term = std::log(4.0 / delta_prime);

    double n0 = 0.0, s0 = 0.0;
    const double total = static_cast<double>(total_count_);
    for (std::size_t row = rows_.size(); row-- > 0;) {
        for (const auto& b : rows_[row]) {
            n0 += static_cast<double>(static_cast<std::int64_t>(1) << row);
            s0 += b.sum;
            const double n1 = total - n0;
            if (n1 <= 0.0) break;
            const double m = 1.0 / (1.0 / n0 + 1.0 / n1);
            const double eps = std::sqrt(log_term / (2.0 * m));
            const double mu0 = s0 / n0;
            const double mu1 = (total_sum_ - s0) / n1;
            if (std::abs(mu0 - mu1) >= eps) {
                last_increase_ = mu1 > mu0;
                drop_oldest_bucket();
                return true;
            }
        }
    }
    return false;
}

detector_status adwin_detector::update(int error_bit) {
    insert(error_bit);
    bool shrunk = false;
    while (scan_cuts()) shrunk = true;
    if (!shrunk) return detector_status::stable;
    if (cfg_.reset_on_drift) reset();
    return detector_status::drift;
}

// ------------------------------------------------------------------ ddm --

ddm_detector::ddm_detector(config cfg) : cfg_(cfg) {}

void ddm_detector::reset() {
    n_ = 0;
    p_ = 0.0;
    p_min_ = s_min_ = ps_min_ = 0.0;
    has_min_ = false;
}

detector_status ddm_detector::update(int error_bit) {
    ++n_;
    p_ += (error_bit - p_) / static_cast<double>(n_);
    const double s = std::sqrt(p_ * (1.0 - p_) / static_cast<double>(n_));
    if (n_ < cfg_.min_instances) return detector_status::stable;

    if (!has_min_ || p_ + s <= ps_min_) {
        p_min_ = p_;
        s_min_ = s;
        ps_min_ = p_ + s;
        has_min_ = true;
    }

    // strict: an all-correct stream sits exactly on the p_min + k*s_min = 0
    // line and must stay stable
    if (p_ + s > p_min_ + cfg_.drift_level * s_min_) {
        if (cfg_.reset_on_drift) reset();
        return detector_status::drift;
    }
    if (p_ + s > p_min_ + cfg_.warning_level * s_min_) return detector_status::warning;
    return detector_status::stable;
}

// ----------------------------------------------------------------- eddm --

eddm_detector::eddm_detector(config cfg) : cfg_(cfg) {}

void eddm_detector::reset() {
    n_ = 0;
    num_errors_ = 0;
    last_error_at_ = -1;
    dist_n_ = dist_mean_ = dist_m2_ = 0.0;
    m2s_max_ = 0.0;
}

detector_status eddm_detector::update(int error_bit) {
    ++n_;
    if (error_bit != 1) return detector_status::stable;

    ++num_errors_;
    if (last_error_at_ >= 0) {
        const double dist = static_cast<double>(n_ - last_error_at_);
        dist_n_ += 1.0;
        const double delta = dist - dist_mean_;
        dist_mean_ += delta / dist_n_;
        dist_m2_ += delta * (dist - dist_mean_);
    }
    last_error_at_ = n_;
    if (dist_n_ < 1.0) return detector_status::stable;

    const double stddev = std::sqrt(dist_m2_ / dist_n_);
    const double m2s = dist_mean_ + 2.0 * stddev;
    if (m2s > m2s_max_) {
        m2s_max_ = m2s;
        return detector_status::stable;
    }
    if (num_errors_ < cfg_.min_errors || m2s_max_ <= 0.0) return detector_status::stable;

    const double ratio = m2s / m2s_max_;
    if (ratio < cfg_.drift_ratio) {
        if (cfg_.reset_on_drift) reset();
        return detector_status::drift;
    }
    if (ratio < cfg_.warning_ratio) return detector_status::warning;
    return detector_status::stable;
}

// ----------------------------------------------------------------- hddm --

hddm_detector::hddm_detector(config cfg) : cfg_(cfg) {}

void hddm_detector::reset() {
    total_n_ = total_c_ = 0.0;
    min_n_ = min_c_ = 0.0;
}

bool hddm_detector::mean_increased(double confidence) const {
    if (min_n_ <= 0.0 || total_n_ <= min_n_) return false;
    const double inv = 1.0 / min_n_ - 1.0 / total_n_;
    const double eps = std::sqrt(inv / 2.0 * std::log(1.0 / confidence));
    return total_c_ / total_n_ - min_c_ / min_n_ >= eps;
}

detector_status hddm_detector::update(int error_bit) {
    total_n_ += 1.0;
    total_c_ += error_bit;

    auto bound = [&](double n) { return std::sqrt(std::log(1.0 / cfg_.drift_confidence) / (2.0 * n)); };
    if (min_n_ <= 0.0 ||
        min_c_ / min_n_ + bound(min_n_) >= total_c_ / total_n_ + bound(total_n_)) {
        min_n_ = total_n_;
        min_c_ = total_c_;
    }

    if (mean_increased(cfg_.drift_confidence)) {
        if (cfg_.reset_on_drift) reset();
        return detector_status::drift;
    }
    if (mean_increased(cfg_.warning_confidence)) return detector_status::warning;
    return detector_status::stable;
}

// ----------------------------------------------------------------- rddm --

rddm_detector::rddm_detector(config cfg) : cfg_(cfg) {}

void rddm_detector::reset() {
    ring_.clear();
    n_ = 0;
    p_ = 0.0;
    p_min_ = s_min_ = ps_min_ = 0.0;
    has_min_ = false;
    warning_streak_ = 0;
    // recomputations_ intentionally survives; it counts lifetime events
}

void rddm_detector::push_ring(int error_bit) {
    ring_.push_back(static_cast<std::uint8_t>(error_bit));
    if (ring_.size() > static_cast<std::size_t>(cfg_.min_stable)) ring_.pop_front();
}

void rddm_detector::recompute_from_ring() {
    ++recomputations_;
    n_ = 0;
    p_ = 0.0;
    p_min_ = s_min_ = ps_min_ = 0.0;
    has_min_ = false;
    for (std::uint8_t bit : ring_) {
        ++n_;
        p_ += (bit - p_) / static_cast<double>(n_);
        if (n_ < cfg_.min_instances) continue;
        const double s = std::sqrt(p_ * (1.0 - p_) / static_cast<double>(n_));
        if (!has_min_ || p_ + s <= ps_min_) {
            p_min_ = p_;
            s_min_ = s;
            ps_min_ = p_ + s;
            has_min_ = true;
        }
    }
}

detector_status rddm_detector::update(int error_bit) {
    push_ring(error_bit);
    ++n_;
    p_ += (error_bit - p_) / static_cast<double>(n_);
    const double s = std::sqrt(p_ * (1.0 - p_) / static_cast<double>(n_));
    if (n_ < cfg_.min_instances) return detector_status::stable;

    if (!has_min_ || p_ + s <= ps_min_) {
        p_min_ = p_;
        s_min_ = s;
        ps_min_ = p_ + s;
        has_min_ = true;
    }

    if (p_ + s > p_min_ + cfg_.drift_level * s_min_) {
        if (cfg_.reset_on_drift) reset();
        return detector_status::drift;
    }
    if (p_ + s > p_min_ + cfg_.warning_level * s_min_) {
        ++warning_streak_;
        if (warning_streak_ > cfg_.warn_limit) {
            ++forced_drifts_;
            if (cfg_.reset_on_drift) reset();
            return detector_status::drift;
        }
        return detector_status::warning;
    }

    warning_streak_ = 0;
    if (n_ > cfg_.max_concept) recompute_from_ring();
    return detector_status::stable;
}

// ----------------------------------------------------------------- ecdd --

ecdd_detector::ecdd_detector(config cfg) : cfg_(cfg) {}

void ecdd_detector::reset() {
    t_ = 0;
    p_hat_ = 0.0;
    z_ = 0.0;
}

namespace {

// control limit for ARL0 = 400 as a polynomial in the estimated rate
double ecdd_limit_arl400(double p) {
    const double p3 = p * p * p;
    const double p5 = p3 * p * p;
    const double p7 = p5 * p * p;
    return 3.97 - 6.56 * p + 48.73 * p3 - 330.13 * p5 + 848.18 * p7;
}

}  // namespace

detector_status ecdd_detector::update(int error_bit) {
    ++t_;
    p_hat_ += (error_bit - p_hat_) / static_cast<double>(t_);
    z_ = (1.0 - cfg_.lambda) * z_ + cfg_.lambda * error_bit;

    const double lt = cfg_.lambda / (2.0 - cfg_.lambda);
    const double horizon = 1.0 - std::pow(1.0 - cfg_.lambda, 2.0 * static_cast<double>(t_));
    const double sigma_z = std::sqrt(p_hat_ * (1.0 - p_hat_) * lt * horizon);
    const double limit = ecdd_limit_arl400(p_hat_);

    if (z_ > p_hat_ + limit * sigma_z) {
        if (cfg_.reset_on_drift) reset();
        return detector_status::drift;
    }
    if (z_ > p_hat_ + cfg_.warning_fraction * limit * sigma_z) return detector_status::warning;
    return detector_status::stable;
}

// ------------------------------------------------------------------- ph --

ph_detector::ph_detector(config cfg) : cfg_(cfg) {}

void ph_detector::reset() {
    n_ = 0;
    mean_ = 0.0;
    m_ = 0.0;
    m_min_ = 0.0;
}

detector_status ph_detector::update(int error_bit) {
    ++n_;
    mean_ += (error_bit - mean_) / static_cast<double>(n_);
    m_ += error_bit - mean_ - cfg_.delta;
    m_min_ = std::min(m_min_, m_);
    if (n_ < cfg_.min_instances) return detector_status::stable;
    if (m_ - m_min_ > cfg_.lambda) {
        if (cfg_.reset_on_drift) reset();
        return detector_status::drift;
    }
    return detector_status::stable;
}

// ---------------------------------------------------------------- kswin --

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t ia = 0, ib = 0;
    double d = 0.0;
    while (ia < a.size() && ib < b.size()) {
        const double x = std::min(a[ia], b[ib]);
        while (ia < a.size() && a[ia] <= x) ++ia;
        while (ib < b.size() && b[ib] <= x) ++ib;
        d = std::max(d, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
    }
    return d;
}

kswin_detector::kswin_detector(config cfg) : cfg_(cfg), rng_(cfg.seed) {
    if (cfg_.stat_size <= 0 || cfg_.window_size <= 2 * cfg_.stat_size - 1)
        throw config_error("kswin: window_size must exceed 2 * stat_size");
}

void kswin_detector::reset() {
    window_.clear();
    rng_ = rng(cfg_.seed);
}

detector_status kswin_detector::update(int error_bit) {
    window_.push_back(static_cast<double>(error_bit));
    if (window_.size() > static_cast<std::size_t>(cfg_.window_size)) window_.pop_front();
    if (window_.size() < static_cast<std::size_t>(cfg_.window_size)) return detector_status::stable;

    const std::size_t rest = window_.size() - static_cast<std::size_t>(cfg_.stat_size);
    std::vector<double> recent(window_.end() - cfg_.stat_size, window_.end());
    const auto picked = rng_.sample_indices(cfg_.stat_size, static_cast<int>(rest));
    std::vector<double> sampled;
    sampled.reserve(picked.size());
    for (int idx : picked) sampled.push_back(window_[static_cast<std::size_t>(idx)]);

    const double d = ks_statistic(std::move(sampled), std::move(recent));
    const double threshold = std::sqrt(-std::log(cfg_.alpha) / static_cast<double>(cfg_.stat_size));
    if (d > threshold) {
        if (cfg_.reset_on_drift) reset();
        return detector_status::drift;
    }
    return detector_status::stable;
}

// ---------------------------------------------------------------- stepd --

stepd_detector::stepd_detector(config cfg) : cfg_(cfg) {}

void stepd_detector::reset() {
    recent_.clear();
    recent_errors_ = 0;
    older_n_ = 0;
    older_errors_ = 0;
}

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

detector_status stepd_detector::update(int error_bit) {
    recent_.push_back(static_cast<std::uint8_t>(error_bit));
    recent_errors_ += error_bit;
    if (recent_.size() > static_cast<std::size_t>(cfg_.window_size)) {
        const int popped = recent_.front();
        recent_.pop_front();
        recent_errors_ -= popped;
        ++older_n_;
        older_errors_ += popped;
    }
    if (older_n_ < cfg_.window_size) return detector_status::stable;

    const double no = static_cast<double>(older_n_);
    const double nr = static_cast<double>(recent_.size());
    const double po = static_cast<double>(older_errors_) / no;
    const double pr = static_cast<double>(recent_errors_) / nr;
    const double p_hat = static_cast<double>(older_errors_ + recent_errors_) / (no + nr);
    const double denom = std::sqrt(p_hat * (1.0 - p_hat) * (1.0 / no + 1.0 / nr));
    if (denom <= 0.0) return detector_status::stable;

    const double numer = std::abs(po - pr) - 0.5 * (1.0 / no + 1.0 / nr);
    const double z = numer / denom;
    const double p_value = 2.0 * (1.0 - normal_cdf(z));

    if (p_value < cfg_.drift_alpha) {
        if (cfg_.reset_on_drift) reset();
        return detector_status::drift;
    }
    if (p_value < cfg_.warning_alpha) return detector_status::warning;
    return detector_status::stable;
}

// -------------------------------------------------------------- registry --

const std::vector<std::string>& detector_names() {
    static const std::vector<std::string> names{"adwin", "ddm",  "ecdd",  "eddm", "hddm",
                                                "kswin", "ph",   "rddm",  "stepd"};
    return names;
}

std::unique_ptr<drift_detector> make_detector(const std::string& name, std::uint64_t seed) {
    if (name == "adwin") return std::make_unique<adwin_detector>();
    if (name == "ddm") return std::make_unique<ddm_detector>();
    if (name == "eddm") return std::make_unique<eddm_detector>();
    if (name == "hddm") return std::make_unique<hddm_detector>();
    if (name == "rddm") return std::make_unique<rddm_detector>();
    if (name == "ecdd") return std::make_unique<ecdd_detector>();
    if (name == "ph") return std::make_unique<ph_detector>();
    if (name == "kswin") {
        kswin_detector::config cfg;
        cfg.seed = seed;
        return std::make_unique<kswin_detector>(cfg);
    }
    if (name == "stepd") return std::make_unique<stepd_detector>();
    std::string valid;
    for (const auto& n : detector_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw config_error("unknown detector '" + name + "' (valid: " + valid + ")");
}

}  // namespace driftbench
