#include "fxdiag/extrema_mtest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fxdiag/error.hpp"
#include "fxdiag/random.hpp"
#include "fxdiag/series.hpp"

namespace fxdiag {

namespace {

constexpr const char* kCalibrationSchema = "fxdiag.calibration";
constexpr int kCalibrationVersion = 1;

bool same_level(double a, double b) { return std::abs(a - b) < 1e-12; }

// Streaming xi for one replication: only the first and last extremum positions and their count
// matter, since the mean gap telescopes.
template <class Draw>
double replicate_xi(std::size_t n, Draw&& draw) {
    double prev = draw();
    double cur = draw();
    std::size_t first = 0, last = 0, count = 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double next = draw();
        if ((cur > prev && cur > next) || (cur < prev && cur < next)) {
            if (count == 0) first = i;
            last = i;
            ++count;
        }
        prev = cur;
        cur = next;
    }
    if (count < 2) return std::nan("");
    const double gaps = static_cast<double>(count - 1);
    const double m_hat = static_cast<double>(last - first) / gaps;
    return std::sqrt(gaps) * (m_hat - kMeanExtremaGap);
}

}  // namespace

ExtremaTrace local_extrema(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 3) fail(ErrorKind::InsufficientData, "local extrema need n >= 3");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (xs[i] == xs[i + 1])
            fail(ErrorKind::Tie, "adjacent equal values at indices " + std::to_string(i) + " and " +
                                     std::to_string(i + 1) +
                                     "; the M-test assumes a continuous law: deduplicate or add "
                                     "explicit jitter before testing");
    ExtremaTrace trace;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (xs[i] > xs[i - 1] && xs[i] > xs[i + 1])
            trace.positions.push_back({i, ExtremumKind::Max});
        else if (xs[i] < xs[i - 1] && xs[i] < xs[i + 1])
            trace.positions.push_back({i, ExtremumKind::Min});
    }
    for (std::size_t j = 0; j + 1 < trace.positions.size(); ++j)
        trace.taus.push_back(trace.positions[j + 1].index - trace.positions[j].index);
    return trace;
}

MTestStatistic m_test_statistic(const ExtremaTrace& trace) {
    if (trace.taus.empty())
        fail(ErrorKind::InsufficientExtrema, "M-test needs at least two local extrema");
    double sum = 0.0;
    for (auto t : trace.taus) sum += static_cast<double>(t);
    const double n = static_cast<double>(trace.taus.size());
    const double m_hat = sum / n;
    return {m_hat, std::sqrt(n) * (m_hat - kMeanExtremaGap), trace.taus.size()};
}

double CalibrationTable::fractile(double level) const {
    for (const auto& [p, q] : fractiles)
        if (same_level(p, level)) return q;
    std::ostringstream msg;
    msg << "calibration table has no fractile at level " << level;
    fail(ErrorKind::Configuration, msg.str());
}

std::vector<double> simulate_xi(std::size_t sample_size, std::uint64_t seed, std::size_t first,
                                std::size_t count, CalibrationBase base) {
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t r = first; r < first + count; ++r) {
        Engine eng = substream(seed, r);
        // Ties have probability ~n * 2^-53 per replication and are not special-cased.
        if (base == CalibrationBase::Uniform) {
            out.push_back(replicate_xi(sample_size, [&] { return uniform01(eng); }));
        } else {
            std::normal_distribution<double> normal;
            out.push_back(replicate_xi(sample_size, [&] { return normal(eng); }));
        }
    }
    return out;
}

CalibrationTable table_from_pool(std::size_t sample_size, std::uint64_t seed,
                                 std::span<const double> pool) {
    std::vector<double> clean;
    clean.reserve(pool.size());
    for (double v : pool)
        if (std::isfinite(v)) clean.push_back(v);
    if (clean.size() < 2) fail(ErrorKind::InsufficientData, "calibration pool too small");

    CalibrationTable table;
    table.sample_size = sample_size;
    table.replications = pool.size();
    table.seed = seed;
    table.mean = sample_mean(clean);
    table.variance = empirical_variance(clean);

    std::sort(clean.begin(), clean.end());
    const double n = static_cast<double>(clean.size());
    for (double level : kCalibrationLevels) {
        auto rank = static_cast<std::size_t>(std::ceil(level * n - 1e-9));
        rank = std::clamp<std::size_t>(rank, 1, clean.size());
        table.fractiles.emplace_back(level, clean[rank - 1]);
    }
    return table;
}

CalibrationTable calibrate(std::size_t sample_size, std::size_t replications, std::uint64_t seed,
                           unsigned threads, CalibrationBase base) {
    if (sample_size < 100) fail(ErrorKind::Configuration, "calibration needs sample_size >= 100");
    if (replications < 100) fail(ErrorKind::Configuration, "calibration needs replications >= 100");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, replications));

    std::vector<double> pool(replications);
    const std::size_t chunk = (replications + threads - 1) / threads;
    {
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < threads; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(replications, begin + chunk);
            if (begin >= end) break;
            workers.emplace_back([&, begin, end] {
                auto part = simulate_xi(sample_size, seed, begin, end - begin, base);
                std::copy(part.begin(), part.end(), pool.begin() + static_cast<std::ptrdiff_t>(begin));
            });
        }
    }
    return table_from_pool(sample_size, seed, pool);
}

std::string to_json(const CalibrationTable& table) {
    nlohmann::ordered_json doc;
    doc["schema"] = kCalibrationSchema;
    doc["version"] = kCalibrationVersion;
    doc["sample_size"] = table.sample_size;
    doc["replications"] = table.replications;
    doc["seed"] = table.seed;
    doc["mean"] = table.mean;
    doc["variance"] = table.variance;
    auto fr = nlohmann::ordered_json::array();
    for (const auto& [p, q] : table.fractiles) fr.push_back({p, q});
    doc["fractiles"] = std::move(fr);
    return doc.dump(2) + "\n";
}

CalibrationTable calibration_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::Configuration, std::string("calibration JSON: ") + e.what());
    }
    try {
        if (doc.at("schema").get<std::string>() != kCalibrationSchema)
            fail(ErrorKind::Configuration, "calibration JSON: unexpected schema");
        if (doc.at("version").get<int>() != kCalibrationVersion)
            fail(ErrorKind::Configuration, "calibration JSON: unsupported version");
        CalibrationTable t;
        t.sample_size = doc.at("sample_size").get<std::size_t>();
        t.replications = doc.at("replications").get<std::size_t>();
        t.seed = doc.at("seed").get<std::uint64_t>();
        t.mean = doc.at("mean").get<double>();
        t.variance = doc.at("variance").get<double>();
        for (const auto& pair : doc.at("fractiles"))
            t.fractiles.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
        for (std::size_t i = 1; i < t.fractiles.size(); ++i)
            if (!(t.fractiles[i - 1].first < t.fractiles[i].first) ||
                t.fractiles[i - 1].second > t.fractiles[i].second)
                fail(ErrorKind::Configuration, "calibration JSON: fractiles not monotone");
        return t;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::Configuration, std::string("calibration JSON: ") + e.what());
    }
}

void save_calibration(const CalibrationTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
    out << to_json(table);
    if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
}

CalibrationTable load_calibration(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return calibration_from_json(buf.str());
    } catch (const Error& e) {
        fail(e.kind(), path.string() + ": " + e.what());
    }
}

MTestResult m_test(std::span<const double> xs, const CalibrationTable& table, double level) {
    const bool supported = std::any_of(kSupportedTestLevels.begin(), kSupportedTestLevels.end(),
                                       [&](double l) { return same_level(l, level); });
    if (!supported) {
        std::ostringstream msg;
        msg << "unsupported M-test level " << level << " (supported: 0.01, 0.02, 0.05, 0.1, 0.2)";
        fail(ErrorKind::Configuration, msg.str());
    }
    const auto stat = m_test_statistic(local_extrema(xs));
    auto rejects = [&](double l) {
        return stat.xi < table.fractile(l / 2.0) || stat.xi > table.fractile(1.0 - l / 2.0);
    };

    MTestResult result{rejects(level), stat, level, table.fractile(level / 2.0),
                       table.fractile(1.0 - level / 2.0), 0.0, 1.0};
    // Smallest supported level that rejects bounds p from above; the next smaller one from below.
    for (double l : kSupportedTestLevels) {
        if (rejects(l)) {
            result.p_high = l;
            break;
        }
        result.p_low = l;
    }
    return result;
}

}  // namespace fxdiag
