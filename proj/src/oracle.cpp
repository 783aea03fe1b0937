#include "photon/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "photon/error.hpp"

namespace photon::oracle {

namespace {

void guard(std::uint64_t k, std::size_t absorbers, std::size_t max_absorbers) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  if (k > kMaxPhotons || absorbers > max_absorbers) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "oracle instance too large: k = " + std::to_string(k) +
                    " (max " + std::to_string(kMaxPhotons) +
                    "), absorbers = " + std::to_string(absorbers) + " (max " +
                    std::to_string(max_absorbers) + ")");
  }
}

mpq_class power(const mpq_class& base, std::uint64_t exponent) {
  mpq_class out = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) out *= base;
  return out;
}

mpz_class factorial(std::uint64_t n) {
  mpz_class out = 1;
  for (std::uint64_t i = 2; i <= n; ++i) out *= static_cast<unsigned long>(i);
  return out;
}

std::vector<mpq_class> exact_qs(const QVector& qv) {
  std::vector<mpq_class> qs;
  for (const double q : qv.absorbers()) qs.emplace_back(q);
  return qs;
}

// Single-photon fates: [0, A) captured at shell j+1, A detected, A+1 missed.
std::vector<mpq_class> photon_fates(const QVector& qv) {
  const auto qs = exact_qs(qv);
  std::vector<mpq_class> fates;
  mpq_class reach = 1;
  for (const auto& q : qs) {
    fates.push_back(reach * q);
    reach *= 1 - q;
  }
  const mpq_class q_d(qv.detector());
  fates.push_back(reach * q_d);
  fates.push_back(reach * (1 - q_d));
  return fates;
}

// Recursively distributes `remaining` photons over fate categories
// [index, fates.size()).
struct CompositionWalk {
  const std::vector<std::vector<mpq_class>>& powers;  // powers[f][n]
  const std::vector<mpz_class>& factorials;
  std::size_t detected_index;
  std::vector<mpq_class>& out;

  void visit(std::size_t index, std::uint64_t remaining, const mpq_class& prob,
             const mpz_class& denom, std::uint64_t detected) {
    if (index + 1 == powers.size()) {
      const std::uint64_t n = remaining;
      if (index == detected_index) detected = n;
      mpq_class term = prob * powers[index][n];
      const mpz_class d = denom * factorials[n];
      const mpz_class multinomial = factorials.back() / d;
      term *= mpq_class(multinomial);
      out[detected] += term;
      return;
    }
    for (std::uint64_t n = 0; n <= remaining; ++n) {
      if (powers[index][n] == 0 && n > 0) break;
      visit(index + 1, remaining - n, prob * powers[index][n],
            denom * factorials[n], index == detected_index ? n : detected);
    }
  }
};

mpq_class binomial_term(std::uint64_t s, std::uint64_t m, const mpq_class& p,
                        const std::vector<mpz_class>& factorials) {
  const mpz_class coeff = factorials[s] / (factorials[m] * factorials[s - m]);
  return mpq_class(coeff) * power(p, m) * power(1 - p, s - m);
}

double to_double(const mpq_class& x) { return x.get_d(); }

}  // namespace

mpq_class ExactDistribution::total() const { return at_least(0); }

mpq_class ExactDistribution::at_least(std::size_t m) const {
  mpq_class sum = 0;
  for (std::size_t i = m; i < outcomes.size(); ++i) sum += outcomes[i];
  return sum;
}

CountDistribution ExactDistribution::to_doubles() const {
  CountDistribution d;
  for (const auto& x : outcomes) d.probabilities.push_back(to_double(x));
  return d;
}

ExactDistribution enumerate_separate(const QVector& qv, std::uint64_t k) {
  guard(k, qv.absorber_count(), kMaxSeparateAbsorbers);
  const auto fates = photon_fates(qv);

  std::vector<std::vector<mpq_class>> powers;
  for (const auto& f : fates) {
    std::vector<mpq_class> row{mpq_class(1)};
    for (std::uint64_t n = 1; n <= k; ++n) row.push_back(row.back() * f);
    powers.push_back(std::move(row));
  }
  std::vector<mpz_class> factorials;
  for (std::uint64_t n = 0; n <= k; ++n) factorials.push_back(factorial(n));

  ExactDistribution dist;
  dist.outcomes.assign(k + 1, mpq_class(0));
  CompositionWalk walk{powers, factorials, qv.absorber_count(), dist.outcomes};
  walk.visit(0, k, mpq_class(1), mpz_class(1), 0);
  return dist;
}

BunchedEnumeration enumerate_bunched(const QVector& qv, std::uint64_t k) {
  guard(k, qv.absorber_count(), kMaxBunchedAbsorbers);
  const auto qs = exact_qs(qv);
  const std::size_t a = qs.size();

  // pass[j][s] = (1 - q_j)^s
  std::vector<std::vector<mpq_class>> pass(a);
  for (std::size_t j = 0; j < a; ++j) {
    pass[j].push_back(mpq_class(1));
    for (std::uint64_t s = 1; s <= k; ++s) {
      pass[j].push_back(pass[j].back() * (1 - qs[j]));
    }
  }

  BunchedEnumeration out;
  out.survivors.outcomes.assign(k + 1, mpq_class(0));
  const std::uint64_t histories = std::uint64_t{1} << a;
  for (std::uint64_t h = 0; h < histories; ++h) {
    std::uint64_t s = k;
    mpq_class prob = 1;
    for (std::size_t j = 0; j < a && prob != 0; ++j) {
      if ((h >> j) & 1U) {
        if (s == 0) {
          prob = 0;
          break;
        }
        prob *= 1 - pass[j][s];
        --s;
      } else {
        prob *= pass[j][s];
      }
    }
    if (prob != 0) out.survivors.outcomes[s] += prob;
  }

  std::vector<mpz_class> factorials;
  for (std::uint64_t n = 0; n <= k; ++n) factorials.push_back(factorial(n));
  const mpq_class q_d(qv.detector());
  out.detected.outcomes.assign(k + 1, mpq_class(0));
  for (std::uint64_t s = 0; s <= k; ++s) {
    if (out.survivors.outcomes[s] == 0) continue;
    for (std::uint64_t m = 0; m <= s; ++m) {
      out.detected.outcomes[m] +=
          out.survivors.outcomes[s] * binomial_term(s, m, q_d, factorials);
    }
  }
  return out;
}

double CrossCheckReport::max_deviation() const {
  return std::max({max_dev_separate, max_dev_survivors,
                   max_dev_bunched_detected, max_dev_verdict});
}

namespace {

double max_abs_diff(const CountDistribution& a, const CountDistribution& b) {
  double dev = 0.0;
  const std::size_t n = std::max(a.probabilities.size(), b.probabilities.size());
  for (std::size_t i = 0; i < n; ++i) {
    dev = std::max(dev, std::abs(a.at(i) - b.at(i)));
  }
  return dev;
}

}  // namespace

CrossCheckReport cross_check(const QVector& qv, std::uint64_t k, double tol) {
  CrossCheckReport r;
  r.tolerance = tol;

  const ExactDistribution separate = enumerate_separate(qv, k);
  const BunchedEnumeration bunched = enumerate_bunched(qv, k);
  const ExactDistribution vacuum =
      enumerate_separate(QVector({}, qv.detector()), k);

  r.totals_exact = separate.total() == 1 && bunched.survivors.total() == 1 &&
                   bunched.detected.total() == 1 && vacuum.total() == 1;

  r.max_dev_separate =
      max_abs_diff(separate.to_doubles(),
                   m_of_k_distribution(detect_probability_product(qv), k));
  r.max_dev_survivors = max_abs_diff(bunched.survivors.to_doubles(),
                                     bunched_survivor_distribution(qv, k));
  r.max_dev_bunched_detected = max_abs_diff(
      bunched.detected.to_doubles(), bunched_detected_distribution(qv, k));

  InequalityVerdict& o = r.oracle_verdict;
  o.event_m = guaranteed_event_m(qv.absorber_count(), k);
  o.p_separate = to_double(separate.at_least(o.event_m));
  o.p_bunched = to_double(bunched.detected.at_least(o.event_m));
  o.p_vacuum = to_double(vacuum.at_least(o.event_m));
  o.vacuum_power_bound =
      to_double(power(mpq_class(qv.detector()), o.event_m));
  o.degenerate_vacuum = std::all_of(qv.absorbers().begin(),
                                    qv.absorbers().end(),
                                    [](double q) { return q == 0.0; });
  o.ordering_holds = ordering_holds(o.p_separate, o.p_bunched, o.p_vacuum,
                                    o.vacuum_power_bound);

  r.analytic_verdict = inequality_report(qv, k);
  const InequalityVerdict& a = r.analytic_verdict;
  r.max_dev_verdict = std::max({std::abs(o.p_separate - a.p_separate),
                                std::abs(o.p_bunched - a.p_bunched),
                                std::abs(o.p_vacuum - a.p_vacuum),
                                std::abs(o.vacuum_power_bound -
                                         a.vacuum_power_bound)});

  r.pass = r.totals_exact && r.max_deviation() <= tol &&
           o.ordering_holds == a.ordering_holds;
  return r;
}

}  // namespace photon::oracle
