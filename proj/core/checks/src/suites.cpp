#include "ergolab/checks/suites.hpp"

#include <chrono>
#include <numeric>
#include <sstream>

#include "ergolab/checks/oracles.hpp"
#include "ergolab/checks/random_sets.hpp"
#include "ergolab/errors.hpp"
#include "ergolab/phi.hpp"
#include "ergolab/probes.hpp"
#include "ergolab/sampling.hpp"

namespace ergolab::checks {
namespace {

// Counts checks and keeps the first few violations for the report.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checked_;
    if (ok) return;
    ++violations_;
    if (violations_ <= 3) first_ += (first_.empty() ? "" : "; ") + what;
  }

  bool clean() const { return violations_ == 0 && checked_ > 0; }

  std::string summary(const std::string& prefix) const {
    std::ostringstream out;
    out << prefix << ", " << checked_ << " checks, " << violations_ << " violations";
    if (!first_.empty()) out << " (" << first_ << ")";
    return out.str();
  }

 private:
  std::uint64_t checked_ = 0;
  std::uint64_t violations_ = 0;
  std::string first_;
};

Scalar frac(long p, long q) { return Scalar::fraction(p, q); }

std::string str(const Scalar& s) { return s.to_string(); }

SetClass non_null_set(const SpaceRef& space, CounterRng& rng) {
  for (;;) {
    SetClass s = gen::any_set(space, rng);
    if (!is_null(s)) return s;
  }
}

// |phi_m(A) - phi_m(B)| <= (m + 1) d(A, B) on random and nearby pairs.
std::string lipschitz(Tally& tally, std::uint64_t seed) {
  CounterRng rng(seed ^ 0x11);
  const std::vector<System> systems{
      System::odometer(2),
      System::odometer(3),
      System::rotation(frac(1, 5)),
      gen::permutation(rng, 64, true),
      System::product(System::identity(2), System::odometer(2)),
  };
  const std::vector<std::size_t> ms{0, 1, 2, 4, 8, 16, 32};
  const std::vector<Scalar> radii{frac(1, 2), frac(1, 8), frac(1, 32), frac(1, 128)};
  constexpr int kPairs = 1000;
  for (const System& T : systems) {
    for (int pair = 0; pair < kPairs; ++pair) {
      const SetClass A = gen::any_set(T.space(), rng);
      const SetClass B =
          pair % 2 == 0 ? gen::any_set(T.space(), rng) : perturb(A, radii[rng.below(radii.size())], rng);
      const Scalar d = distance(A, B);
      const auto seq_a = phi_m_sequence(T, A, ms.back());
      const auto seq_b = phi_m_sequence(T, B, ms.back());
      for (std::size_t m : ms) {
        const Scalar gap = (seq_a[m] - seq_b[m]).abs();
        tally.check(gap <= Scalar(static_cast<long>(m + 1)) * d,
                    T.describe() + " m=" + std::to_string(m) + " gap " + str(gap) + " d " + str(d));
      }
    }
  }
  return "5 systems x 1000 pairs x 7 values of m";
}

// The binary odometer is ergodic, so every non-null cylinder union has phi = 1.
std::string ergodicity(Tally& tally, std::uint64_t seed) {
  CounterRng rng(seed ^ 0x22);
  const System T = System::odometer(2);
  auto verify = [&](const SetClass& A) {
    const PhiResult r = phi(T, A);
    tally.check(r.exact && r.lower == Scalar(1) && r.steps_used <= 255,
                to_text(A) + " gave [" + str(r.lower) + ", " + str(r.upper) + "] after " +
                    std::to_string(r.steps_used));
  };
  for (int i = 0; i < 500; ++i) {
    verify(gen::cylinder_union(T.space(), static_cast<std::uint32_t>(rng.between(1, 8)), rng));
  }
  for (std::uint32_t mask = 1; mask < (1U << 16); ++mask) {
    std::vector<std::uint64_t> indices;
    for (std::uint64_t j = 0; j < 16; ++j) {
      if ((mask >> j) & 1U) indices.push_back(j);
    }
    verify(SetClass::cylinders(T.space(), 4, std::move(indices)));
  }
  return "500 sampled unions (level <= 8) and all 65535 non-null level-4 unions";
}

// The invariant fiber of two odometer copies is a discontinuity point of phi.
std::string tm1(Tally& tally, std::uint64_t) {
  const System T = System::product(System::identity(2), System::odometer(2));
  const SetClass A = SetClass::product(T.space(), {SetClass::full(T.space()->fiber()), SetClass::empty(T.space()->fiber())});
  const PhiResult base = phi(T, A);
  tally.check(base.exact && base.lower == frac(1, 2), "phi(A) = " + str(base.lower));
  const DiscontinuityWitness w = discontinuity_witness(T, A, frac(1, 2), 32);
  const Scalar d = distance(A, w.witness);
  tally.check(d == w.distance && d <= frac(1, 64), "d(A, C) = " + str(d));
  const PhiResult at_c = phi(T, w.witness);
  tally.check(at_c.exact, "phi(C) not exact");
  const Scalar jump = at_c.lower - base.lower;
  tally.check(jump == w.jump && jump > frac(1, 4), "jump " + str(jump));
  tally.check(w.guarantee == frac(1, 4), "guarantee " + str(w.guarantee));
  return "d(A,C) = " + str(d) + ", phi(C) - phi(A) = " + str(jump);
}

// The null class is a discontinuity point even of an ergodic system.
std::string null_point(Tally& tally, std::uint64_t seed) {
  const System T = System::odometer(2);
  ProbeOptions options;
  options.radii = {frac(1, 4), frac(1, 16), frac(1, 256)};
  options.seed = seed;
  const ProbeReport report = continuity_probe(T, SetClass::empty(T.space()), options);
  tally.check(report.radii.size() == 3, "expected 3 radii");
  for (const RadiusObservation& obs : report.radii) {
    tally.check(obs.sup_jump == Scalar(1), "radius " + str(obs.radius) + " jump " + str(obs.sup_jump));
  }
  tally.check(report.verdict == ProbeVerdict::discontinuity_witnessed, "verdict " + to_string(report.verdict));
  return "probe at the null class, radii 1/4, 1/16, 1/256";
}

void periodic_probe(Tally& tally, const System& T, const SetClass& A, const Scalar& lipschitz, CounterRng& rng,
                    const std::string& label) {
  ProbeOptions options;
  options.radii = {frac(1, 32), frac(1, 128)};
  options.samples_per_radius = 8;
  options.seed = rng.next();
  const ProbeReport report = continuity_probe(T, A, options);
  for (const RadiusObservation& obs : report.radii) {
    tally.check(obs.bracketed == 0 && obs.sup_jump <= lipschitz * obs.radius,
                label + " radius " + str(obs.radius) + " jump " + str(obs.sup_jump));
  }
}

// Periodic systems stabilize within one period and probes stay Lipschitz.
std::string periodic(Tally& tally, std::uint64_t seed) {
  CounterRng rng(seed ^ 0x55);
  for (long q = 2; q <= 64; ++q) {
    long p = 0;
    do {
      p = static_cast<long>(rng.between(1, static_cast<std::uint64_t>(q - 1)));
    } while (std::gcd(p, q) != 1);
    const System T = System::rotation(frac(p, q));
    const SetClass A = non_null_set(T.space(), rng);
    const PhiResult r = phi(T, A);
    const std::string label = "rotation " + std::to_string(p) + "/" + std::to_string(q);
    tally.check(r.exact && r.steps_used <= static_cast<std::size_t>(q - 1),
                label + " stabilized after " + std::to_string(r.steps_used));
    periodic_probe(tally, T, A, Scalar(q), rng, label);
  }
  for (int i = 0; i < 50; ++i) {
    const auto n = static_cast<std::size_t>(rng.between(1, 256));
    const System T = gen::permutation(rng, n, rng.coin());
    mpz_class lcm = 1;
    for (const auto& cycle : T.cycles()) lcm = ::lcm(lcm, mpz_class(static_cast<unsigned long>(cycle.size())));
    const SetClass A = non_null_set(T.space(), rng);
    const PhiResult r = phi(T, A);
    const std::string label = "permutation n=" + std::to_string(n);
    tally.check(r.exact && mpz_class(static_cast<unsigned long>(r.steps_used)) <= lcm - 1,
                label + " stabilized after " + std::to_string(r.steps_used));
    periodic_probe(tally, T, A, Scalar(lcm), rng, label);
  }
  return "63 rational rotations and 50 random permutations";
}

// phi* on the binary odometer against brute force, plus the phi* witness.
std::string tm2(Tally& tally, std::uint64_t seed) {
  CounterRng rng(seed ^ 0x66);
  const System T = System::odometer(2);
  constexpr std::uint64_t kBudget = 64;
  auto brute = [&](const SetClass& A) {
    Scalar best(1);
    std::uint64_t first = 0;
    for (std::uint64_t m = 1; m <= kBudget; ++m) {
      const Scalar v = oracle::odometer_phi(A, m);
      if (v < best) {
        best = v;
        first = m;
      }
    }
    return std::pair{best, first};
  };
  for (std::uint32_t level = 1; level <= 6; ++level) {
    for (std::uint64_t index = 0; index < (std::uint64_t{1} << level); ++index) {
      const SetClass A = SetClass::cylinders(T.space(), level, {index});
      const PhiStarResult r = phi_star(T, A, kBudget);
      const Scalar expected = frac(1, 1L << level);
      const auto [oracle_value, oracle_at] = brute(A);
      const std::string label = to_text(A);
      tally.check(r.value.exact && r.value.lower == expected, label + " phi* = " + str(r.value.lower));
      tally.check(r.attained_at && *r.attained_at == (std::uint64_t{1} << level), label + " attained elsewhere");
      tally.check(oracle_value == expected && oracle_at == (std::uint64_t{1} << level), label + " oracle disagrees");
    }
  }
  for (int i = 0; i < 40; ++i) {
    const SetClass A = gen::cylinder_union(T.space(), static_cast<std::uint32_t>(rng.between(1, 6)), rng);
    const PhiStarResult r = phi_star(T, A, kBudget);
    const Scalar oracle_value = brute(A).first;
    tally.check(r.value.exact && r.value.lower == oracle_value,
                to_text(A) + " phi* " + str(r.value.lower) + " oracle " + str(oracle_value));
  }

  const SetClass A = SetClass::word(T.space(), "0");
  const PhiStarWitness w = phi_star_discontinuity_witness(T, A, frac(1, 16), {2, 4, 8});
  tally.check(distance(A, w.set) < frac(1, 16), "witness distance " + str(distance(A, w.set)));
  tally.check(w.jumps.size() == 3, "expected three exponents");
  for (const auto& jump : w.jumps) {
    const Scalar independent = oracle::odometer_phi(w.set, jump.exponent) - oracle::odometer_phi(A, jump.exponent);
    tally.check(jump.jump == frac(1, 2) && independent == jump.jump && jump.jump > frac(1, 4),
                "exponent " + std::to_string(jump.exponent) + " jump " + str(jump.jump));
  }
  return "126 cylinders up to level 6 and 40 unions against brute force over m <= 64, witness at cyl(\"0\")";
}

// Tower floors checked with the oracle's bit vectors, not the set algebra.
std::string rokhlin(Tally& tally, std::uint64_t) {
  for (unsigned base : {2U, 3U}) {
    const System T = System::odometer(base);
    const SetClass region = SetClass::full(T.space());
    for (std::uint64_t height = 1; height <= 32; ++height) {
      for (const Scalar& eps : {frac(1, 4), frac(1, 16), frac(1, 1024)}) {
        const std::string label =
            "b=" + std::to_string(base) + " n0=" + std::to_string(height) + " eps=" + str(eps);
        const RokhlinTower tower = rokhlin_tower(T, region, height, eps);
        tally.check(tower.height == height, label + " wrong height");
        const std::uint32_t level = oracle::cylinder_level(tower.base);
        const auto bits = oracle::cylinder_bits(normalize(tower.base), level);
        const std::uint64_t n = bits.size();
        std::vector<std::uint32_t> hits(n, 0);
        bool disjoint = true;
        for (std::uint64_t j = 0; j < n; ++j) {
          if (!bits[j]) continue;
          for (std::uint64_t k = 0; k < height; ++k) {
            if (++hits[(j + k) % n] > 1) disjoint = false;
          }
        }
        std::uint64_t covered = 0;
        for (std::uint32_t h : hits) covered += h > 0 ? 1 : 0;
        tally.check(disjoint, label + " floors overlap");
        tally.check(Scalar::fraction(covered, n) > Scalar(1) - eps, label + " coverage " + std::to_string(covered) +
                                                                       "/" + std::to_string(n));
      }
    }
  }
  return "b in {2,3}, n0 = 1..32, eps in {1/4, 1/16, 1/1024}";
}

std::vector<bool> random_bits(std::size_t n, CounterRng& rng) {
  std::vector<bool> bits(n);
  const std::uint64_t density = rng.between(1, 7);
  for (std::size_t i = 0; i < n; ++i) bits[i] = rng.below(8) < density;
  return bits;
}

SetClass atoms_from(const SpaceRef& space, const std::vector<bool>& bits) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) members.push_back(i);
  }
  return SetClass::atoms(space, members);
}

// Set algebra and phi against the brute-force oracles.
std::string oracle_suite(Tally& tally, std::uint64_t seed) {
  CounterRng rng(seed ^ 0x88);
  for (int i = 0; i < 200; ++i) {
    const auto n = static_cast<std::size_t>(rng.between(1, 512));
    const System T = gen::permutation(rng, n, rng.coin());
    const auto bits = random_bits(n, rng);
    const SetClass A = atoms_from(T.space(), bits);
    const auto& weights = T.space()->weights();
    const std::string label = "permutation n=" + std::to_string(n);

    const PhiResult r = phi(T, A);
    const Scalar expected = oracle::permutation_phi(T.map(), weights, bits);
    tally.check(r.exact && r.lower == expected, label + " phi " + str(r.lower) + " oracle " + str(expected));

    const auto m = static_cast<std::size_t>(rng.between(0, 8));
    tally.check(phi_m(T, A, m) == oracle::permutation_phi_m(T.map(), weights, bits, 1, m), label + " phi_m");

    const std::uint64_t k = rng.between(2, 4);
    const PhiResult rk = phi(T.power(k), A);
    tally.check(rk.exact && rk.lower == oracle::permutation_phi(T.map(), weights, bits, k),
                label + " power " + std::to_string(k));
  }

  for (int i = 0; i < 200; ++i) {
    const unsigned base = rng.coin() ? 2U : 3U;
    const std::uint32_t max_level = base == 2 ? 12 : 7;
    const SpaceRef space = Space::cylinders(base);
    const auto la = static_cast<std::uint32_t>(rng.between(0, max_level));
    const auto lb = static_cast<std::uint32_t>(rng.between(0, max_level));
    const auto bits_a = random_bits(cylinder_count(base, la), rng);
    const auto bits_b = random_bits(cylinder_count(base, lb), rng);
    const SetClass A = oracle::from_bits(space, la, bits_a);
    const SetClass B = oracle::from_bits(space, lb, bits_b);
    const std::uint32_t level = std::max(la, lb);
    const auto a = oracle::cylinder_bits(A, level);
    const auto b = oracle::cylinder_bits(B, level);
    const std::size_t n = a.size();
    const std::string label = "base " + std::to_string(base) + " levels " + std::to_string(la) + "/" +
                              std::to_string(lb);

    auto agree = [&](const SetClass& got, auto op, const char* name) {
      std::vector<bool> want(n);
      for (std::size_t j = 0; j < n; ++j) want[j] = op(a[j], b[j]);
      tally.check(got.is_canonical() && oracle::cylinder_bits(got, level) == want, label + " " + name);
      return want;
    };
    agree(unite(A, B), [](bool x, bool y) { return x || y; }, "union");
    agree(intersect(A, B), [](bool x, bool y) { return x && y; }, "intersection");
    agree(complement(A), [](bool x, bool) { return !x; }, "complement");
    const auto sym = agree(symdiff(A, B), [](bool x, bool y) { return x != y; }, "symdiff");
    agree(difference(A, B), [](bool x, bool y) { return x && !y; }, "difference");

    std::uint64_t in_a = 0;
    std::uint64_t in_sym = 0;
    bool subset = true;
    for (std::size_t j = 0; j < n; ++j) {
      in_a += a[j] ? 1 : 0;
      in_sym += sym[j] ? 1 : 0;
      subset = subset && (!a[j] || b[j]);
    }
    tally.check(measure(A) == Scalar::fraction(in_a, n), label + " measure");
    tally.check(distance(A, B) == Scalar::fraction(in_sym, n), label + " distance");
    tally.check(is_subset(A, B) == subset, label + " subset");
    tally.check((A == B) == (a == b), label + " equality");
  }
  return "200 permutations (n <= 512) and 200 cylinder pairs (level <= 12)";
}

// Every power of an irrational rotation is ergodic: phi = 1 and no jumps.
std::string totally_ergodic(Tally& tally, std::uint64_t seed) {
  const System T = System::rotation(Scalar::quadratic(mpq_class(-1, 2), mpq_class(1, 2), 5));
  const SetClass A = SetClass::interval(T.space(), Scalar(0), frac(1, 10));
  tally.check(is_totally_ergodic(T), "not classified as totally ergodic");
  std::size_t worst = 0;
  for (std::uint64_t k = 1; k <= 16; ++k) {
    const System Tk = T.power(k);
    const PhiResult r = phi(Tk, A, 100);
    worst = std::max(worst, r.steps_used);
    tally.check(r.exact && r.lower == Scalar(1) && r.certificate == PhiCertificate::stabilized,
                "k=" + std::to_string(k) + " gave [" + str(r.lower) + ", " + str(r.upper) + "]");

    ProbeOptions options;
    options.radii = {frac(1, 16), frac(1, 64)};
    options.samples_per_radius = 4;
    options.seed = seed + k;
    const ProbeReport report = continuity_probe(Tk, A, options);
    for (const RadiusObservation& obs : report.radii) {
      tally.check(obs.samples > 0 && obs.sup_jump.is_zero(),
                  "k=" + std::to_string(k) + " radius " + str(obs.radius) + " jump " + str(obs.sup_jump));
    }
  }
  return "powers k = 1..16, slowest stabilization at step " + std::to_string(worst);
}

struct SuiteEntry {
  const char* name;
  double limit_seconds;
  std::string (*body)(Tally&, std::uint64_t);
};

const std::vector<SuiteEntry>& entries() {
  static const std::vector<SuiteEntry> table{
      {"lipschitz", 30, lipschitz},     {"ergodicity", 20, ergodicity},
      {"tm1", 5, tm1},                  {"null-point", 10, null_point},
      {"periodic", 60, periodic},       {"tm2", 60, tm2},
      {"rokhlin", 30, rokhlin},         {"oracle", 60, oracle_suite},
      {"totally-ergodic", 60, totally_ergodic},
  };
  return table;
}

std::string_view strip_suffix(std::string_view name) {
  constexpr std::string_view suffix = "-suite";
  if (name.size() > suffix.size() && name.substr(name.size() - suffix.size()) == suffix) {
    name.remove_suffix(suffix.size());
  }
  return name;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const SuiteEntry& e : entries()) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

bool is_suite_name(std::string_view name) {
  name = strip_suffix(name);
  if (name == "all") return true;
  for (const SuiteEntry& e : entries()) {
    if (name == e.name) return true;
  }
  return false;
}

CheckOutcome run_suite(std::string_view name, std::uint64_t seed) {
  name = strip_suffix(name);
  for (const SuiteEntry& e : entries()) {
    if (name != e.name) continue;
    CheckOutcome outcome;
    outcome.name = e.name;
    outcome.limit_seconds = e.limit_seconds;
    Tally tally;
    const auto start = std::chrono::steady_clock::now();
    std::string scope;
    try {
      scope = e.body(tally, seed);
    } catch (const std::exception& ex) {
      tally.check(false, std::string("exception: ") + ex.what());
    }
    outcome.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = outcome.seconds < outcome.limit_seconds;
    outcome.passed = tally.clean() && in_time;
    outcome.detail = tally.summary(scope.empty() ? std::string(e.name) : scope);
    if (!in_time) outcome.detail += ", over the time limit";
    return outcome;
  }
  throw UsageError("unknown check suite '" + std::string(name) + "'");
}

std::vector<CheckOutcome> run_checks(std::string_view name, std::uint64_t seed) {
  if (strip_suffix(name) == "all") {
    std::vector<CheckOutcome> out;
    for (const std::string& suite : suite_names()) out.push_back(run_suite(suite, seed));
    return out;
  }
  return {run_suite(name, seed)};
}

}  // namespace ergolab::checks
