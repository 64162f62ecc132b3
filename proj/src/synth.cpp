#include "lagcorr/synth.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <boost/math/distributions/students_t.hpp>

#include "lagcorr/errors.hpp"

namespace lagcorr {

// ---- random source ----------------------------------------------------------

double NormalSource::uniform() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double NormalSource::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

// ---- VAR model --------------------------------------------------------------

double spectral_radius(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

void validate(const VarModel& model) {
    const auto n = model.phi.rows();
    if (n < 1 || model.phi.cols() != n) throw ValidationError("VAR coefficient matrix must be square and non-empty");
    if (model.sigma.rows() != n || model.sigma.cols() != n)
        throw ValidationError("innovation covariance must match the coefficient matrix size");
    if (!model.phi.allFinite() || !model.sigma.allFinite()) throw ValidationError("VAR model has non-finite entries");
    if ((model.sigma - model.sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw ValidationError("innovation covariance is not symmetric");
    if (Eigen::LLT<Eigen::MatrixXd>(model.sigma).info() != Eigen::Success)
        throw ValidationError("innovation covariance is not positive definite");
    const double rho = spectral_radius(model.phi);
    if (!(rho < 1.0))
        throw ValidationError("VAR model is not stationary: spectral radius " + std::to_string(rho) + " >= 1");
}

Eigen::MatrixXd stationary_covariance(const VarModel& model) {
    validate(model);
    const auto n = model.phi.rows();
    // vec(S) = (I - phi (x) phi)^-1 vec(sigma), column-major vec.
    Eigen::MatrixXd kron(n * n, n * n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) kron.block(a * n, b * n, n, n) = model.phi(a, b) * model.phi;
    }
    const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n * n, n * n) - kron;
    const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(model.sigma.data(), n * n);
    const Eigen::VectorXd v = lhs.partialPivLu().solve(rhs);
    Eigen::MatrixXd s = Eigen::Map<const Eigen::MatrixXd>(v.data(), n, n);
    return 0.5 * (s + s.transpose());
}

Eigen::MatrixXd population_lag1_correlations(const VarModel& model) {
    const Eigen::MatrixXd s = stationary_covariance(model);
    const Eigen::MatrixXd lag1 = model.phi * s;
    const Eigen::VectorXd sd = s.diagonal().cwiseSqrt();
    return lag1.cwiseQuotient(sd * sd.transpose());
}

double population_lag1_correlation(const VarModel& model, std::size_t i, std::size_t j) {
    const Eigen::MatrixXd c = population_lag1_correlations(model);
    if (i >= model.dimension() || j >= model.dimension()) throw ValidationError("VAR index out of range");
    return c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

namespace {

std::vector<std::string> layout_ids(const PanelLayout& layout, std::size_t n) {
    if (layout.instrument_ids.empty()) {
        std::vector<std::string> ids;
        for (std::size_t k = 0; k < n; ++k) ids.push_back("X" + std::to_string(k + 1));
        return ids;
    }
    if (layout.instrument_ids.size() != n) throw ValidationError("layout names do not match the model dimension");
    return layout.instrument_ids;
}

std::vector<Timestamp> layout_times(const PanelLayout& layout, std::size_t length) {
    if (layout.step <= Duration::zero()) throw ValidationError("panel step must be positive");
    std::vector<Timestamp> ts(length);
    for (std::size_t t = 0; t < length; ++t) ts[t] = layout.start + layout.step * static_cast<std::int64_t>(t);
    return ts;
}

Eigen::VectorXd draw(NormalSource& rng, const Eigen::MatrixXd& chol_lower) {
    Eigen::VectorXd z(chol_lower.rows());
    for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = rng.normal();
    return chol_lower * z;
}

std::size_t burn_in_steps(const VarModel& model) {
    return static_cast<std::size_t>(std::ceil(10.0 / (1.0 - spectral_radius(model.phi))));
}

AlignedPanel run_var(const VarModel& model, std::size_t length, const CouplingSchedule* schedule,
                     const PanelLayout& layout, VarInit init) {
    validate(model);
    if (length < 100) throw ValidationError("VAR panel length must be at least 100");
    const auto n = model.phi.rows();
    const Eigen::MatrixXd l = Eigen::LLT<Eigen::MatrixXd>(model.sigma).matrixL();
    NormalSource rng(model.seed);

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    if (init == VarInit::stationary) {
        const Eigen::MatrixXd ls = Eigen::LLT<Eigen::MatrixXd>(stationary_covariance(model)).matrixL();
        x = draw(rng, ls);
    } else {
        const std::size_t burn = burn_in_steps(model);
        for (std::size_t t = 0; t < burn; ++t) x = model.phi * x + draw(rng, l);
    }

    Eigen::MatrixXd out(static_cast<Eigen::Index>(length), n);
    for (std::size_t t = 0; t < length; ++t) {
        if (schedule) {
            const Eigen::MatrixXd phi = (*schedule)(t);
            if (phi.rows() != n || phi.cols() != n) throw ValidationError("coupling schedule returned a wrong shape");
            x = phi * x + draw(rng, l);
        } else {
            x = model.phi * x + draw(rng, l);
        }
        out.row(static_cast<Eigen::Index>(t)) = x.transpose();
    }
    return AlignedPanel(layout_ids(layout, static_cast<std::size_t>(n)), layout_times(layout, length), std::move(out));
}

}  // namespace

AlignedPanel generate_var(const VarModel& model, std::size_t length, const PanelLayout& layout, VarInit init) {
    return run_var(model, length, nullptr, layout, init);
}

AlignedPanel generate_var(const VarModel& model, std::size_t length, const CouplingSchedule& schedule,
                          const PanelLayout& layout) {
    return run_var(model, length, &schedule, layout, VarInit::burn_in);
}

// ---- tail samples -----------------------------------------------------------

TailFamily parse_tail_family(std::string_view name) {
    if (name == "gaussian" || name == "normal") return TailFamily::gaussian;
    if (name == "student_t" || name == "student-t" || name == "t") return TailFamily::student_t;
    if (name == "pareto") return TailFamily::pareto;
    throw ValidationError("unknown tail family '" + std::string(name) + "'");
}

void validate(const TailModel& model) {
    if (!(model.scale > 0.0) || !std::isfinite(model.scale)) throw ValidationError("tail model scale must be positive");
    switch (model.family) {
        case TailFamily::gaussian:
            break;
        case TailFamily::student_t:
            if (!(model.tail_parameter > 0.0) || !std::isfinite(model.tail_parameter))
                throw ValidationError("student_t degrees of freedom must be positive");
            break;
        case TailFamily::pareto:
            if (!(model.tail_parameter > 1.0) || !std::isfinite(model.tail_parameter))
                throw ValidationError("pareto density exponent must exceed 1");
            break;
    }
}

std::vector<double> generate_tail_sample(const TailModel& model, std::size_t count) {
    validate(model);
    if (count < 100) throw ValidationError("tail sample needs at least 100 draws");
    NormalSource rng(model.seed);
    std::vector<double> out(count);
    switch (model.family) {
        case TailFamily::gaussian:
            for (auto& x : out) x = model.scale * rng.normal();
            break;
        case TailFamily::student_t: {
            const boost::math::students_t dist(model.tail_parameter);
            for (auto& x : out) {
                double u = rng.uniform();
                if (u >= 1.0) u = std::nextafter(1.0, 0.0);
                x = model.scale * boost::math::quantile(dist, u);
            }
            break;
        }
        case TailFamily::pareto: {
            // Survival (|x|/scale)^-(alpha-1) inverted from one uniform; sign from a second.
            const double inv = -1.0 / (model.tail_parameter - 1.0);
            for (auto& x : out) {
                const double mag = model.scale * std::pow(rng.uniform(), inv);
                x = rng.uniform() <= 0.5 ? mag : -mag;
            }
            break;
        }
    }
    return out;
}

// ---- market emission --------------------------------------------------------

SyntheticMarket emit_market(const AlignedPanel& panel, const EmissionOptions& options) {
    if (!(options.base_price > 0.0)) throw ValidationError("base price must be positive");
    if (options.interval <= Duration::zero()) throw ValidationError("interval must be positive");
    if (options.ticks_per_bar < 1) throw ValidationError("at least one tick per bar");

    const std::size_t m = options.ticks_per_bar;
    const Duration tick_step = options.interval / static_cast<std::int64_t>(m);
    std::mt19937_64 volumes(options.seed);
    const auto contract_of = [&](std::size_t bar) {
        return "C" + std::to_string(options.roll_every ? bar / options.roll_every : 0);
    };

    SyntheticMarket market;
    const auto& ts = panel.timestamps();
    for (std::size_t c = 0; c < panel.cols(); ++c) {
        const auto& id = panel.instrument_ids()[c];
        const auto col = panel.column(c);
        const auto emit = [&](Timestamp start, std::size_t bar, double prev, double close, double r) {
            for (std::size_t k = 0; k < m; ++k) {
                Tick t;
                t.timestamp = start + tick_step * static_cast<std::int64_t>(k);
                t.instrument_id = id;
                t.contract_id = contract_of(bar);
                if (k + 1 == m) {
                    t.price = close;
                } else {
                    const double frac = static_cast<double>(k + 1) / static_cast<double>(m);
                    const double wiggle = (k % 2 == 0 ? 0.5 : -0.5) * std::abs(r);
                    t.price = prev * std::exp(r * frac + wiggle);
                }
                t.volume = static_cast<std::int64_t>(volumes() % 100) + 1;
                market.ticks.push_back(std::move(t));
            }
        };

        emit(ts.front() - 2 * options.interval, 0, options.base_price, options.base_price, 0.0);
        double cum = 0.0;
        double prev = options.base_price;
        for (std::size_t t = 0; t < panel.rows(); ++t) {
            cum += col[t];
            const double close = options.base_price * std::exp(cum);
            emit(ts[t] - options.interval, t + 1, prev, close, col[t]);
            prev = close;
        }
        if (options.roll_every) {
            for (std::size_t bar = options.roll_every; bar <= panel.rows(); bar += options.roll_every)
                market.calendar.push_back({id, ts[bar - 1] - options.interval});
        }
    }
    market.bars = aggregate_ticks(market.ticks, options.interval);
    return market;
}

}  // namespace lagcorr
