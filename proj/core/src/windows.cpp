#include <algorithm>
#include <filesystem>

#include "fxdiag/pipeline.hpp"

namespace fxdiag {

namespace {

using namespace std::chrono;

Window make_window(std::string label, Date start, Date end, std::vector<Observation> points,
                   std::size_t min_obs) {
    Window w{std::move(label), start, end, std::move(points), false};
    w.too_short = w.points.size() < std::max<std::size_t>(min_obs, 2);
    return w;
}

}  // namespace

std::vector<Window> split_half_years(const Series& series, std::size_t min_obs) {
    std::vector<Window> out;
    const int first_year = static_cast<int>(series.first_date().year());
    const int last_year = static_cast<int>(series.last_date().year());
    for (int y = first_year; y <= last_year; ++y) {
        for (int half = 1; half <= 2; ++half) {
            const Date start{year{y}, month{half == 1 ? 1u : 7u}, day{1}};
            const Date end{year{y}, month{half == 1 ? 6u : 12u}, day{half == 1 ? 30u : 31u}};
            if (end < series.first_date() || series.last_date() < start) continue;
            auto pts = series.slice(start, end);
            if (pts.empty()) continue;
            out.push_back(make_window(std::to_string(y) + "H" + std::to_string(half),
                                      std::max(start, series.first_date()),
                                      std::min(end, series.last_date()), std::move(pts), min_obs));
        }
    }
    return out;
}

std::pair<Window, Window> split_crisis(const Series& series, Date crisis_start, std::size_t min_obs) {
    std::vector<Observation> pre, crisis;
    for (const auto& p : series.points()) (p.date < crisis_start ? pre : crisis).push_back(p);
    const Date day_before = Date{sys_days{crisis_start} - days{1}};
    Window pre_w = make_window("pre-crisis", series.first_date(),
                               std::min(day_before, series.last_date()), std::move(pre), min_obs);
    Window crisis_w = make_window("crisis", std::max(crisis_start, series.first_date()),
                                  series.last_date(), std::move(crisis), min_obs);
    return {std::move(pre_w), std::move(crisis_w)};
}

CalibrationSet::CalibrationSet(std::vector<CalibrationTable> tables) : tables_(std::move(tables)) {
    std::sort(tables_.begin(), tables_.end(), [](const auto& a, const auto& b) {
        return a.sample_size < b.sample_size;
    });
}

CalibrationSet CalibrationSet::load_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec))
        fail(ErrorKind::Configuration, "calibration directory not found: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<CalibrationTable> tables;
    for (const auto& f : files) tables.push_back(load_calibration(f));
    return CalibrationSet(std::move(tables));
}

const CalibrationTable& CalibrationSet::nearest(std::size_t n) const {
    if (tables_.empty()) fail(ErrorKind::Configuration, "no M-test calibration tables available");
    auto distance = [n](const CalibrationTable& t) {
        return t.sample_size > n ? t.sample_size - n : n - t.sample_size;
    };
    const CalibrationTable* best = &tables_.front();
    for (const auto& t : tables_)
        if (distance(t) < distance(*best)) best = &t;
    return *best;
}

CalibrationSet generate_calibration_set(std::uint64_t seed, std::size_t replications) {
    std::vector<CalibrationTable> tables;
    for (std::size_t n : kCalibrationBuckets) tables.push_back(calibrate(n, replications, seed));
    return CalibrationSet(std::move(tables));
}

}  // namespace fxdiag
