#include "qexciton/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>

#include <Eigen/Eigenvalues>

#include "qexciton/errors.hpp"
#include "qexciton/multimode.hpp"
#include "qexciton/qalgebra.hpp"
#include "qexciton/qpolariton.hpp"

namespace qexc
{

namespace
{

constexpr cplx I{0.0, 1.0};
constexpr int kMaxDimension = 64;
constexpr double kEigenResidual = 1e-10;
constexpr double kEigenTolerance = 1e-10;
constexpr double kNormalizationTolerance = 1e-12;
constexpr double kResidualTolerance = 1e-9;
constexpr double kHermitianTolerance = 1e-12;
constexpr double kSectorClosedFormTolerance = 1e-12;

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

enum StreamTag : std::uint64_t
{
    tag_single = 1,
    tag_two_mode = 2,
    tag_sector = 3,
    tag_algebra = 4,
};

// Commutator [b, b^+] on |n> from the number-operator eigenvalues alone.
double commutator_k(double q, int n)
{
    return q_bracket(q, n + 1) - q_bracket(q, n);
}

double max_abs_entry(const ComplexMatrix& m)
{
    return m.cwiseAbs().maxCoeff();
}

// Deformation and occupation drawn from the regime of the presets, k(n) up to
// about 2.3. For k(n) of order 1e8 the monomial cubic has |c0| ~ 1e24 and no
// root finder reading its coefficients reaches 1e-10 eV.
std::pair<double, int> draw_occupation(DrawStream& s)
{
    if (s.chance(0.25))
    {
        return {1.0, s.integer(0, 100)};
    }
    if (s.chance(0.5))
    {
        return {s.uniform(0.985, 1.015), s.integer(0, 100)};
    }
    return {s.uniform(0.9, 1.1), s.integer(0, 5)};
}

// Smallest over pairings of the largest |a_i - b_pi(i)|; sizes <= 4.
double matched_deviation(const std::vector<cplx>& a, const std::vector<cplx>& b)
{
    std::vector<std::size_t> order(b.size());
    std::iota(order.begin(), order.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do
    {
        double worst = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            worst = std::max(worst, std::abs(a[i] - b[order[i]]));
        }
        best = std::min(best, worst);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

ComplexMatrix two_mode_oracle(const SystemParams& p, double k)
{
    ComplexMatrix m(2, 2);
    m << p.omega_ex * k - I * p.gamma_ex, p.g, p.g * k, cplx(p.omega, -p.gamma_ph);
    return m;
}

SystemParams draw_system(DrawStream& s, bool damped)
{
    SystemParams p;
    p.omega = s.uniform(1.0, 2.0);
    p.omega_ex = p.omega + s.uniform(-5e-3, 5e-3);
    p.g = s.uniform(1e-5, 5e-3);
    p.gamma_ex = damped ? s.uniform(0.0, 2e-4) : 0.0;
    p.gamma_ph = damped ? s.uniform(0.0, 2e-4) : 0.0;
    p.alpha_sq = 1.0;
    return p;
}

double vector_residual(const ComplexMatrix& m, cplx omega, const Eigen::VectorXcd& w)
{
    const ComplexMatrix shifted = m - omega * ComplexMatrix::Identity(m.rows(), m.cols());
    return (shifted * w).norm() / (max_abs_entry(m) * w.norm());
}

std::vector<cplx> eigenvalues(const ComplexMatrix& m)
{
    return eig_small_complex(m).values;
}

std::string format_double(double value)
{
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6e", value);
    return buffer;
}

} // namespace

DrawStream::DrawStream(std::uint64_t seed, std::uint64_t tag, int draw)
    : rng_(splitmix64(seed ^ splitmix64(tag * 0x100000001B3ULL + static_cast<std::uint64_t>(draw))))
{
}

double DrawStream::uniform(double lo, double hi)
{
    return lo + (hi - lo) * static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

int DrawStream::integer(int lo, int hi)
{
    return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
}

bool DrawStream::chance(double p)
{
    return uniform(0.0, 1.0) < p;
}

double DrawStream::deformation(double spread)
{
    return chance(0.25) ? 1.0 : uniform(1.0 - spread, 1.0 + spread);
}

Tracker::Tracker(std::string name, double tolerance, bool asserted)
{
    result_.name = std::move(name);
    result_.tolerance = tolerance;
    result_.asserted = asserted;
}

void Tracker::record(double deviation, int draw)
{
    if (std::isnan(deviation))
    {
        deviation = std::numeric_limits<double>::infinity();
    }
    if (result_.worst_draw < 0 || deviation > result_.max_deviation)
    {
        result_.max_deviation = deviation;
        result_.worst_draw = draw;
    }
}

EigenDecomposition eig_small_complex(const ComplexMatrix& m, bool want_vectors)
{
    if (m.rows() == 0 || m.rows() != m.cols())
    {
        throw DomainError("eigensolver needs a non-empty square matrix");
    }
    if (m.rows() > kMaxDimension)
    {
        throw DomainError("eigensolver is limited to dimension 64");
    }
    if (!m.allFinite())
    {
        throw DomainError("matrix has non-finite entries");
    }

    Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, true);
    if (solver.info() != Eigen::Success)
    {
        throw NumericalError("complex eigensolver did not converge");
    }

    const auto n = static_cast<std::size_t>(m.rows());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto& values = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return ascending_re_im(values(static_cast<Eigen::Index>(a)), values(static_cast<Eigen::Index>(b)));
    });

    EigenDecomposition out;
    const double norm = m.norm();
    for (std::size_t j = 0; j < n; ++j)
    {
        const auto col = static_cast<Eigen::Index>(order[j]);
        const cplx lambda = values(col);
        out.values.push_back(lambda);
        const Eigen::VectorXcd v = solver.eigenvectors().col(col);
        const double denom = norm * v.norm();
        const double residual = denom > 0.0 ? (m * v - lambda * v).norm() / denom : 0.0;
        out.max_residual = std::max(out.max_residual, residual);
    }
    if (!(out.max_residual <= kEigenResidual))
    {
        throw NumericalError("eigenpair residual " + format_double(out.max_residual) + " exceeds 1e-10");
    }
    if (want_vectors)
    {
        out.vectors.resize(m.rows(), m.cols());
        for (std::size_t j = 0; j < n; ++j)
        {
            out.vectors.col(static_cast<Eigen::Index>(j)) =
                solver.eigenvectors().col(static_cast<Eigen::Index>(order[j]));
        }
    }
    return out;
}

SectorMatrix build_sector(int N, double q, const SystemParams& p, SectorDamping damping)
{
    if (N < 1 || N > kMaxDimension - 1)
    {
        throw DomainError("sector excitation number must lie in 1..63");
    }
    p.validate();
    if (!(q > 0.0))
    {
        throw DomainError("q must be positive");
    }
    SectorMatrix sector;
    sector.N = N;
    sector.entries = ComplexMatrix::Zero(N + 1, N + 1);
    for (int m = 0; m <= N; ++m)
    {
        const int photons = N - m;
        const double loss = damping == SectorDamping::proportional
                                ? p.gamma_ph * photons + p.gamma_ex * m
                                : p.gamma_ph * (photons > 0 ? 1.0 : 0.0) + p.gamma_ex * (m > 0 ? 1.0 : 0.0);
        sector.entries(m, m) = cplx(p.omega * photons + p.omega_ex * q_bracket(q, m), -loss);
        if (m < N)
        {
            const double coupling = p.g * std::sqrt(static_cast<double>(photons)) * q_amplitude(q, m + 1);
            sector.entries(m, m + 1) = coupling;
            sector.entries(m + 1, m) = coupling;
        }
    }
    return sector;
}

std::vector<CheckResult> single_mode_checks(std::uint64_t seed, int draws)
{
    Tracker eig("single_mode.eigenvalues", kEigenTolerance);
    Tracker norm("single_mode.normalization_undamped", kNormalizationTolerance);
    Tracker residual("single_mode.residual_damped", kResidualTolerance);
    Tracker deformed_eig("qpolariton.eigenvalues", kEigenTolerance);
    Tracker deformed_norm("qpolariton.normalization_undamped", kNormalizationTolerance);

    for (int draw = 0; draw < draws; ++draw)
    {
        DrawStream s(seed, tag_single, draw);
        const auto [q, n] = draw_occupation(s);
        const double sd = s.deformation(0.1);
        const int n_k = s.integer(0, 20);
        const SystemParams damped = draw_system(s, true);
        SystemParams undamped = damped;
        undamped.gamma_ex = 0.0;
        undamped.gamma_ph = 0.0;

        const double k = commutator_k(q, n);
        const double M = commutator_k(sd, n_k);
        const ComplexMatrix m = two_mode_oracle(damped, k);
        const auto reference = eigenvalues(m);

        eig.guarded(draw, [&] {
            const auto closed = polariton_spectrum(damped, q, n);
            return matched_deviation({closed[0], closed[1]}, reference);
        });

        residual.guarded(draw, [&] {
            double worst = 0.0;
            for (Branch b : kBranches)
            {
                const auto branch = polariton_branch(damped, q, n, b);
                Eigen::VectorXcd w(2);
                w << branch.u, branch.v;
                worst = std::max(worst, vector_residual(m, branch.omega_c, w));
            }
            return worst;
        });

        norm.guarded(draw, [&] {
            double worst = 0.0;
            for (Branch b : kBranches)
            {
                const auto c = hopfield_coefficients(undamped, q, n, b);
                worst = std::max(worst, std::abs(std::norm(c.u) * k + std::norm(c.v) - 1.0));
            }
            return worst;
        });

        deformed_eig.guarded(draw, [&] {
            const auto closed = deformed_polariton_spectrum(damped, q, n, sd, n_k);
            return matched_deviation({closed[0] * M, closed[1] * M}, reference);
        });

        deformed_norm.guarded(draw, [&] {
            double worst = 0.0;
            for (Branch b : kBranches)
            {
                const auto c = deformed_hopfield_coefficients(undamped, q, n, sd, n_k, b);
                worst = std::max(worst, std::abs((std::norm(c.u) * k + std::norm(c.v)) / M - 1.0));
            }
            return worst;
        });
    }
    return {eig.result(), norm.result(), residual.result(), deformed_eig.result(), deformed_norm.result()};
}

std::vector<CheckResult> two_mode_checks(std::uint64_t seed, int draws)
{
    Tracker companion("two_mode.cubic_vs_companion", kEigenTolerance);
    Tracker matrix("two_mode.cubic_vs_matrix", kEigenTolerance);
    Tracker vieta("two_mode.vieta", kEigenTolerance);
    Tracker residual("two_mode.residual", kResidualTolerance);

    for (int draw = 0; draw < draws; ++draw)
    {
        DrawStream s(seed, tag_two_mode, draw);
        TwoModeParams p;
        p.omega = s.uniform(1.0, 2.0);
        p.omega_ex1 = p.omega + s.uniform(-3e-2, 3e-2);
        p.omega_ex2 = p.omega + s.uniform(-3e-2, 3e-2);
        p.g = s.uniform(1e-5, 5e-3);
        p.gamma_ex1 = s.uniform(0.0, 3e-4);
        p.gamma_ex2 = s.uniform(0.0, 3e-4);
        p.gamma_ph = s.uniform(0.0, 3e-4);
        std::tie(p.q1, p.n1) = draw_occupation(s);
        std::tie(p.q2, p.n2) = draw_occupation(s);
        p.alpha_sq = 1.0;

        const double k1 = commutator_k(p.q1, p.n1);
        const double k2 = commutator_k(p.q2, p.n2);
        ComplexMatrix m(3, 3);
        m << p.omega_ex1 * k1 - I * p.gamma_ex1, 0.0, p.g, 0.0, p.omega_ex2 * k2 - I * p.gamma_ex2, p.g, p.g * k1,
            p.g * k2, cplx(p.omega, -p.gamma_ph);
        const auto reference = eigenvalues(m);

        ShiftedCubic cubic;
        CubicRoots roots;
        try
        {
            cubic = characteristic_cubic(p);
            roots = solve_cubic(cubic);
        }
        catch (const Error&)
        {
            for (Tracker* t : {&companion, &matrix, &vieta, &residual})
            {
                t->record(std::numeric_limits<double>::infinity(), draw);
            }
            continue;
        }
        std::vector<cplx> closed(roots.roots.begin(), roots.roots.end());

        // Companion matrix of the shifted cubic, rescaled to unit root size.
        const double R = std::max({std::abs(cubic.c2), std::sqrt(std::abs(cubic.c1)), std::cbrt(std::abs(cubic.c0)),
                                   std::numeric_limits<double>::min()});
        ComplexMatrix c = ComplexMatrix::Zero(3, 3);
        c(0, 2) = -cubic.c0 / (R * R * R);
        c(1, 2) = -cubic.c1 / (R * R);
        c(2, 2) = -cubic.c2 / R;
        c(1, 0) = 1.0;
        c(2, 1) = 1.0;
        std::vector<cplx> from_companion;
        for (cplx z : eigenvalues(c))
        {
            from_companion.push_back(z * R + cubic.shift);
        }
        companion.record(matched_deviation(closed, from_companion), draw);
        matrix.record(matched_deviation(closed, reference), draw);

        std::array<cplx, 3> z{};
        for (std::size_t i = 0; i < 3; ++i)
        {
            z[i] = closed[i] - cubic.shift;
        }
        const double e1 = std::abs(z[0] + z[1] + z[2] + cubic.c2) / R;
        const double e2 = std::abs(z[0] * z[1] + z[0] * z[2] + z[1] * z[2] - cubic.c1) / (R * R);
        const double e3 = std::abs(z[0] * z[1] * z[2] + cubic.c0) / (R * R * R);
        vieta.record(std::max({e1, e2, e3}), draw);

        residual.guarded(draw, [&] {
            double worst = 0.0;
            for (const auto& branch : three_mode_branches(p))
            {
                Eigen::VectorXcd w(3);
                w << branch.coefficients.u, branch.coefficients.x, branch.coefficients.v;
                worst = std::max(worst, vector_residual(m, branch.omega_c, w));
            }
            return worst;
        });
    }
    return {companion.result(), matrix.result(), vieta.result(), residual.result()};
}

std::vector<CheckResult> sector_checks(std::uint64_t seed, int draws)
{
    Tracker closed_form("sector.n1_closed_form", kSectorClosedFormTolerance);
    Tracker hermitian("sector.hermitian_imag", kHermitianTolerance);
    Tracker trace("sector.trace", kEigenTolerance);
    Tracker boson_transitions("sector.q1_transitions", kEigenTolerance);
    Tracker mapping_n_ex("sector.mapping_n_ex", 0.0, false);
    Tracker mapping_N("sector.mapping_N", 0.0, false);

    // Largest distance from a closed-form branch to the nearest transition
    // energy between neighbouring sectors.
    auto transition_gap = [](const std::vector<cplx>& upper, const std::vector<cplx>& lower,
                             const std::array<cplx, 2>& closed) {
        double worst = 0.0;
        for (cplx target : closed)
        {
            double best = std::numeric_limits<double>::infinity();
            for (cplx a : upper)
            {
                for (cplx b : lower)
                {
                    best = std::min(best, std::abs(a - b - target));
                }
            }
            worst = std::max(worst, best);
        }
        return worst;
    };
    auto sector_values = [](int N, double q, const SystemParams& p) {
        return N == 0 ? std::vector<cplx>{0.0} : eigenvalues(build_sector(N, q, p).entries);
    };

    for (int draw = 0; draw < draws; ++draw)
    {
        DrawStream s(seed, tag_sector, draw);
        const SystemParams undamped = draw_system(s, false);
        const SystemParams damped = draw_system(s, true);
        const double q = s.deformation(0.1);
        const int N = s.integer(1, 12);

        const auto block = build_sector(1, 1.0, undamped);
        closed_form.guarded(draw, [&] {
            const auto closed = polariton_spectrum(undamped, 1.0, 0);
            return matched_deviation({closed[0], closed[1]}, eigenvalues(block.entries));
        });

        const auto hermitian_block = build_sector(N, q, undamped);
        double imag = 0.0;
        for (cplx lambda : eigenvalues(hermitian_block.entries))
        {
            imag = std::max(imag, std::abs(lambda.imag()));
        }
        hermitian.record(imag / std::max(1.0, max_abs_entry(hermitian_block.entries)), draw);

        const auto damped_block = build_sector(N, q, damped);
        const auto values = eigenvalues(damped_block.entries);
        const cplx sum = std::accumulate(values.begin(), values.end(), cplx{});
        const double diagonal = damped_block.entries.diagonal().cwiseAbs().sum();
        trace.record(std::abs(sum - damped_block.entries.trace()) / std::max(1.0, diagonal), draw);

        const auto upper_boson = sector_values(N, 1.0, undamped);
        const auto lower_boson = sector_values(N - 1, 1.0, undamped);
        boson_transitions.guarded(draw, [&] {
            return transition_gap(upper_boson, lower_boson, polariton_spectrum(undamped, 1.0, 0)) /
                   std::max(1.0, N * undamped.omega);
        });

        const auto upper = sector_values(N, q, undamped);
        const auto lower = sector_values(N - 1, q, undamped);
        mapping_n_ex.guarded(draw, [&] { return transition_gap(upper, lower, polariton_spectrum(undamped, q, N - 1)); });
        mapping_N.guarded(draw, [&] { return transition_gap(upper, lower, polariton_spectrum(undamped, q, N)); });
    }
    return {closed_form.result(),        hermitian.result(),   trace.result(),
            boson_transitions.result(),  mapping_n_ex.result(), mapping_N.result()};
}

std::vector<CheckResult> algebra_checks(std::uint64_t seed, int draws)
{
    Tracker commutator("algebra.k_commutator", kEigenTolerance);
    Tracker inversion("algebra.k_inversion", kNormalizationTolerance);
    Tracker factorial("algebra.factorial_ratio", kNormalizationTolerance);

    for (int draw = 0; draw < draws; ++draw)
    {
        DrawStream s(seed, tag_algebra, draw);
        const double q = s.deformation(0.25);
        const int n = s.integer(0, 60);
        const double k = k_factor(q, n);
        commutator.record(std::abs(k / commutator_k(q, n) - 1.0), draw);
        inversion.record(std::abs(k_factor(1.0 / q, n) / k - 1.0), draw);
        const int m = std::max(n, 1);
        const double ratio = q_factorial(q, m) / q_factorial(q, m - 1);
        factorial.record(std::abs(ratio / std::sqrt(q_bracket(q, m)) - 1.0), draw);
    }
    return {commutator.result(), inversion.result(), factorial.result()};
}

bool ValidationReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

std::string ValidationReport::to_text() const
{
    std::string out;
    out += "seed: " + std::to_string(seed) + "\n";
    out += "draws: " + std::to_string(draws) + "\n";
    int failed = 0;
    for (const auto& c : checks)
    {
        const char* status = !c.asserted ? "info" : (c.passed() ? "pass" : "fail");
        failed += c.passed() ? 0 : 1;
        out += c.name + ".max_deviation: " + format_double(c.max_deviation) + "\n";
        if (c.asserted)
        {
            out += c.name + ".tolerance: " + format_double(c.tolerance) + "\n";
        }
        out += c.name + ".worst_draw: " + std::to_string(c.worst_draw) + "\n";
        out += c.name + ".status: " + status + "\n";
    }
    out += "summary.checks: " + std::to_string(checks.size()) + "\n";
    out += "summary.failed: " + std::to_string(failed) + "\n";
    for (const auto& c : checks)
    {
        if (!c.passed())
        {
            out += "summary.offender: " + c.name + "\n";
        }
    }
    out += std::string("result: ") + (failed == 0 ? "pass" : "fail") + "\n";
    return out;
}

ValidationReport validate_closed_forms(std::uint64_t seed, int draws)
{
    if (draws < 1)
    {
        throw DomainError("validation needs at least one draw");
    }
    ValidationReport report;
    report.seed = seed;
    report.draws = draws;
    for (auto&& group : {algebra_checks(seed, draws), single_mode_checks(seed, draws), two_mode_checks(seed, draws),
                         sector_checks(seed, draws)})
    {
        report.checks.insert(report.checks.end(), group.begin(), group.end());
    }
    return report;
}

} // namespace qexc
