#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "lagcorr/marketdata.hpp"

namespace lagcorr {

/// Portable normal draws: std::mt19937_64 (fully specified by the standard)
/// feeding Box-Muller. Each pair of normals consumes exactly two 64-bit words;
/// uniforms use the top 53 bits mapped onto (0, 1].
class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

    [[nodiscard]] double uniform();
    [[nodiscard]] double normal();
    [[nodiscard]] std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// x(t) = phi * x(t-1) + eps(t), eps ~ N(0, sigma).
struct VarModel {
    Eigen::MatrixXd phi;
    Eigen::MatrixXd sigma;
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t dimension() const noexcept { return static_cast<std::size_t>(phi.rows()); }
};

[[nodiscard]] double spectral_radius(const Eigen::MatrixXd& m);

/// Throws ValidationError unless phi is square and stable and sigma is
/// symmetric (1e-12) positive definite of matching size.
void validate(const VarModel& model);

/// Solves S = phi S phi^T + sigma.
[[nodiscard]] Eigen::MatrixXd stationary_covariance(const VarModel& model);

/// Population C(1 | x_i, x_j) = (phi S)_ij / sqrt(S_ii S_jj).
[[nodiscard]] double population_lag1_correlation(const VarModel& model, std::size_t i, std::size_t j);
[[nodiscard]] Eigen::MatrixXd population_lag1_correlations(const VarModel& model);

/// Timestamps and names given to generated panels.
struct PanelLayout {
    std::vector<std::string> instrument_ids;  ///< defaults to X1..XN
    Timestamp start = Timestamp{std::chrono::sys_days{std::chrono::year{2009} / 2 / 1}} + std::chrono::hours{1};
    Duration step = std::chrono::hours{1};
};

enum class VarInit {
    burn_in,     ///< start at zero and discard ceil(10 / (1 - spectral radius)) steps
    stationary,  ///< draw x(0) from N(0, S)
};

[[nodiscard]] AlignedPanel generate_var(const VarModel& model, std::size_t length, const PanelLayout& layout = {},
                                        VarInit init = VarInit::burn_in);

/// Coefficient matrix used to produce output row t.
using CouplingSchedule = std::function<Eigen::MatrixXd(std::size_t row)>;

/// As generate_var, but row t uses schedule(t); burn-in uses model.phi.
[[nodiscard]] AlignedPanel generate_var(const VarModel& model, std::size_t length, const CouplingSchedule& schedule,
                                        const PanelLayout& layout = {});

enum class TailFamily { gaussian, student_t, pareto };

[[nodiscard]] TailFamily parse_tail_family(std::string_view name);

/// gaussian: N(0, scale^2), tail_parameter unused.
/// student_t: scale * t(nu) with nu = tail_parameter > 0; density tail ~ |x|^-(nu+1).
/// pareto: symmetric, density proportional to |x|^-tail_parameter for
///         |x| >= scale, tail_parameter > 1.
struct TailModel {
    TailFamily family = TailFamily::gaussian;
    double tail_parameter = 0.0;
    double scale = 1.0;
    std::uint64_t seed = 0;
};

void validate(const TailModel& model);

/// Needs count >= 100.
[[nodiscard]] std::vector<double> generate_tail_sample(const TailModel& model, std::size_t count);

struct EmissionOptions {
    double base_price = 100.0;
    Duration interval = std::chrono::hours{1};
    std::size_t ticks_per_bar = 4;
    std::size_t roll_every = 0;  ///< bars per contract; 0 keeps one contract
    std::uint64_t seed = 0;      ///< tick volumes
};

struct SyntheticMarket {
    std::vector<Tick> ticks;
    std::vector<Bar> bars;
    std::vector<RolloverSwitch> calendar;
};

/// Price paths exp(cumulative return) * base_price per panel column, one bar
/// per row plus a leading base bar, emitted as ticks whose last price in each
/// bar is the close. Bars are the aggregation of those ticks. With
/// roll_every = K every K-th bar starts a new contract, which flags the
/// corresponding return as rollover-affected.
[[nodiscard]] SyntheticMarket emit_market(const AlignedPanel& panel, const EmissionOptions& options = {});

}  // namespace lagcorr
