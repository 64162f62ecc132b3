#pragma once

#include <chrono>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lagcorr/marketdata.hpp"
#include "lagcorr/synth.hpp"

namespace lagcorr::testing {

inline Timestamp hour(int h) {
    return Timestamp{std::chrono::sys_days{std::chrono::year{2010} / 1 / 1}} + std::chrono::hours{h};
}

/// Panel with hourly timestamps from the given columns.
inline AlignedPanel make_panel(const std::vector<std::vector<double>>& columns,
                               std::vector<std::string> ids = {}) {
    const auto rows = columns.front().size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) {
        for (std::size_t r = 0; r < rows; ++r) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = columns[c][r];
    }
    if (ids.empty()) {
        for (std::size_t c = 0; c < columns.size(); ++c) ids.push_back("C" + std::to_string(c));
    }
    std::vector<Timestamp> ts;
    for (std::size_t r = 0; r < rows; ++r) ts.push_back(hour(static_cast<int>(r)));
    return AlignedPanel(std::move(ids), std::move(ts), std::move(m));
}

/// iid N(0,1) panel.
inline AlignedPanel white_noise(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    VarModel m{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cols), static_cast<Eigen::Index>(cols)),
               Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(cols), static_cast<Eigen::Index>(cols)), seed};
    return generate_var(m, rows);
}

/// Per-test scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("lagcorr_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }
    [[nodiscard]] std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

}  // namespace lagcorr::testing
