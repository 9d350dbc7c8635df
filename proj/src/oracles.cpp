#include "agboost/oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

#include "agboost/potential.hpp"

namespace agboost {
namespace {

using boost::math::quadrature::gauss_kronrod;

double integrate_piece(int y, double margin, double dir, double a, double b) {
    if (!(b > a)) return 0.0;
    auto f = [&](double e) { return phi_second(y * (margin + e * dir)); };
    double err = 0.0;
    const double value = gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-13, &err);
    if (err > 1e-11 * std::max(1.0, b - a)) throw std::runtime_error("quadrature did not converge");
    return value;
}

}  // namespace

double exact_corr(const FiniteDistribution& dist, const Hypothesis& h) {
    CompensatedSum s;
    for (const auto& a : dist.atoms()) s.add(a.prob * a.y * h.value(a.x));
    return s.value();
}

double exact_loss(const FiniteDistribution& dist, const Hypothesis& h) {
    CompensatedSum s;
    for (const auto& a : dist.atoms())
        if (sign_of(h.value(a.x)) != a.y) s.add(a.prob);
    return s.value();
}

double exact_potential(const FiniteDistribution& dist, const Hypothesis& H) {
    CompensatedSum s;
    for (const auto& a : dist.atoms()) s.add(a.prob * phi(a.y * H.value(a.x)));
    return s.value();
}

double exact_phi_prime(const FiniteDistribution& dist, const Hypothesis& H, const Hypothesis& h) {
    CompensatedSum s;
    for (const auto& a : dist.atoms()) s.add(a.prob * phi_prime(a.y * H.value(a.x)) * a.y * h.value(a.x));
    return s.value();
}

double exact_phi_second(const FiniteDistribution& dist, const Hypothesis& H, const Hypothesis& h,
                        const Hypothesis& g) {
    CompensatedSum s;
    for (const auto& a : dist.atoms())
        s.add(a.prob * phi_second(a.y * H.value(a.x)) * h.value(a.x) * g.value(a.x));
    return s.value();
}

double average_phi_second(int y, double margin, double dir, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
    double total = 0.0;
    // phi'' has a kink where the margin crosses zero
    if (dir != 0.0) {
        const double kink = -margin / dir;
        if (kink > 0.0 && kink < eta) {
            total = integrate_piece(y, margin, dir, 0.0, kink) + integrate_piece(y, margin, dir, kink, eta);
            return total / eta;
        }
    }
    return integrate_piece(y, margin, dir, 0.0, eta) / eta;
}

double check_consistency_gap(const FiniteDistribution& dist, const Hypothesis& H, const Hypothesis& h_star) {
    auto H_ptr = std::shared_ptr<const Hypothesis>(&H, [](const Hypothesis*) {});
    const SignHypothesis sgn(H_ptr);
    return exact_phi_prime(dist, H, sgn) - exact_phi_prime(dist, H, h_star) -
           (exact_corr(dist, h_star) - exact_corr(dist, sgn));
}

double check_taylor_identity(const FiniteDistribution& dist, const Hypothesis& H_prev, const Hypothesis& h_dir,
                             double eta, const Hypothesis& h_test) {
    if (!(eta >= 0.0)) throw std::invalid_argument("eta must be non-negative");
    CompensatedSum residual;
    for (const auto& a : dist.atoms()) {
        const double m = H_prev.value(a.x);
        const double g = h_dir.value(a.x);
        const double h = h_test.value(a.x);
        const double lhs = phi_prime(a.y * (m + eta * g)) * a.y * h;
        double rhs = phi_prime(a.y * m) * a.y * h;
        if (eta > 0.0) rhs += eta * average_phi_second(a.y, m, g, eta) * h * g;
        residual.add(a.prob * (lhs - rhs));
    }
    return residual.value();
}

double exact_reuse_corr(const ReuseDistribution& reuse, const Hypothesis& h) {
    const auto weights = reuse.selection_weights();
    const double sigma = reuse.sigma();
    CompensatedSum total;
    for (std::size_t s = 1; s <= reuse.rounds(); ++s) {
        const RoundRecord& r = reuse.round(s);
        CompensatedSum round_sum;
        for (std::size_t i = 0; i < r.batch.size(); ++i) {
            const int y = r.batch.label(i);
            double expected_label = y;
            if (r.round_index > 1) {
                const double m = r.prev_margin[i], d = r.dir_value[i];
                const double curvature = r.step > 0.0 ? average_phi_second(y, m, d, r.step) : phi_second(y * m);
                expected_label = -(sigma * phi_prime(y * m) * y + r.step * curvature * d) / (r.step + sigma);
            }
            round_sum.add(expected_label * h.value(r.batch.row(i)));
        }
        total.add(weights[s - 1] * round_sum.value() / static_cast<double>(r.batch.size()));
    }
    return total.value();
}

bool MartingaleCheck::within(double k_sigma) const {
    return std::abs(estimate - expected) <= k_sigma * stderr_;
}

MartingaleCheck check_martingale_recursion(const FiniteDistribution& dist, const Booster& state,
                                           const Hypothesis& h_test, std::size_t replications, Rng& rng) {
    const BoostConfig& cfg = state.config();
    if (cfg.step_mode != StepMode::Fixed)
        throw std::invalid_argument("martingale replay needs a fixed step size");
    if (state.completed_rounds() < 1) throw std::invalid_argument("martingale replay needs a completed round");
    if (replications < 2) throw std::invalid_argument("need at least two replications");

    const Ensemble& H_t = state.ensemble();
    const std::size_t k = H_t.size();  // H_t has t - 1 components
    const double eta = H_t.component(k - 1).step;
    const double sigma = cfg.mix;
    const double lift = 1.0 + eta / sigma;
    if (!(eta > 0.0)) throw std::invalid_argument("martingale replay needs a positive step");

    // H_{t-1} = prefix with one component fewer
    const FunctionHypothesis H_prev([&](std::span<const double> x) { return H_t.value_prefix(x, k - 1); });
    const double corr_prev = exact_reuse_corr(state.reuse(), h_test);
    const double delta_prev = exact_phi_prime(dist, H_prev, h_test) + lift * corr_prev;

    // per-atom contribution of a fresh round-t draw, eta' integrated by quadrature
    std::vector<double> contribution(dist.size());
    for (std::size_t a = 0; a < dist.size(); ++a) {
        const Atom& atom = dist[a];
        const auto [m, d] = H_t.split_last(atom.x);
        const double curvature = average_phi_second(atom.y, m, d, eta);
        const double expected_label = -(sigma * phi_prime(atom.y * m) * atom.y + eta * curvature * d) / (eta + sigma);
        contribution[a] = expected_label * h_test.value(atom.x);
    }
    const double phi_prime_now = exact_phi_prime(dist, H_t, h_test);

    FiniteDistributionSource source(dist);
    const std::size_t S = cfg.fresh_per_round;
    CompensatedSum sum, sum_sq;
    for (std::size_t r = 0; r < replications; ++r) {
        double batch = 0.0;
        for (std::size_t i = 0; i < S; ++i) batch += contribution[source.draw_index(rng)];
        const double corr_now = (1.0 - sigma) * corr_prev + sigma * batch / static_cast<double>(S);
        const double delta = phi_prime_now + lift * corr_now;
        sum.add(delta);
        sum_sq.add(delta * delta);
    }
    const double n = static_cast<double>(replications);
    const double mean = sum.value() / n;
    const double var = std::max(0.0, (sum_sq.value() - n * mean * mean) / (n - 1.0));

    MartingaleCheck out;
    out.estimate = mean;
    out.stderr_ = std::sqrt(var / n);
    out.expected = (1.0 - sigma) * delta_prev;
    out.delta_prev = delta_prev;
    out.replications = replications;
    return out;
}

ErmFit best_in_class(const FiniteDistribution& dist, const FiniteClass& cls) {
    if (cls.size() == 0) throw std::invalid_argument("empty class");
    ErmFit best{0, exact_corr(dist, *cls[0])};
    for (std::size_t k = 1; k < cls.size(); ++k) {
        const double c = exact_corr(dist, *cls[k]);
        if (c > best.correlation) best = {k, c};
    }
    return best;
}

double RealTable::value(std::span<const double> x) const {
    const auto idx = static_cast<std::size_t>(x[0]);
    if (x[0] < 0.0 || idx >= values_.size()) throw std::out_of_range("domain index outside table");
    return values_[idx];
}

FiniteDistribution random_finite_distribution(std::size_t domain_size, std::size_t max_atoms, Rng& rng) {
    if (domain_size == 0 || max_atoms == 0) throw std::invalid_argument("empty random instance");
    const std::size_t cells = 2 * domain_size;
    const std::size_t n_atoms = 1 + uniform_index(rng, std::min(max_atoms, cells));
    // choose distinct (index, label) cells by partial shuffle
    std::vector<std::size_t> ids(cells);
    for (std::size_t i = 0; i < cells; ++i) ids[i] = i;
    for (std::size_t i = 0; i < n_atoms; ++i) std::swap(ids[i], ids[i + uniform_index(rng, cells - i)]);
    std::vector<double> p(n_atoms);
    double total = 0.0;
    for (double& v : p) total += (v = uniform01(rng) + 1e-3);
    std::vector<Atom> atoms;
    CompensatedSum assigned;
    for (std::size_t i = 0; i < n_atoms; ++i) {
        double prob = p[i] / total;
        if (i + 1 == n_atoms) prob = 1.0 - assigned.value();
        assigned.add(prob);
        atoms.push_back({{static_cast<double>(ids[i] / 2)}, ids[i] % 2 ? 1 : -1, prob});
    }
    return FiniteDistribution(std::move(atoms));
}

std::shared_ptr<RealTable> random_real_table(std::size_t domain_size, double bound, Rng& rng) {
    std::vector<double> v(domain_size);
    for (double& x : v) x = (2.0 * uniform01(rng) - 1.0) * bound;
    return std::make_shared<RealTable>(std::move(v));
}

std::shared_ptr<TableHypothesis> random_binary_table(std::size_t domain_size, Rng& rng) {
    std::vector<int> v(domain_size);
    for (int& x : v) x = random_sign(rng);
    return std::make_shared<TableHypothesis>(std::move(v));
}

}  // namespace agboost
