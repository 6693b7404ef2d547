// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "flagctrl/flag_calculus.hpp"
#include "flagctrl/sl/cocycle.hpp"
#include "flagctrl/sl/control.hpp"
#include "flagctrl/sl/iwasawa.hpp"
#include "flagctrl/sl/verify.hpp"
#include "support.hpp"

using namespace flagctrl;
using namespace flagctrl::sl;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  if (!out.pass) ++failures;
  std::printf("%s  [%2d] %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", id, name.c_str(), out.detail.c_str(),
              seconds_since(t0));
  std::fflush(stdout);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

const std::vector<testkit::LieType> kGrid = {{Family::A, 1}, {Family::A, 2}, {Family::A, 3}, {Family::B, 2}};

std::vector<WeylGroup> grid_groups() {
  std::vector<WeylGroup> out;
  for (const auto& t : kGrid) out.push_back(WeylGroup::generate(RootSystem::build(t.family, t.rank)));
  return out;
}

// Visit every (theta, flag_type, coset representative) of the grid.
void for_each_cell(const std::vector<WeylGroup>& groups,
                   const std::function<void(const WeylGroup&, const FlagSpec&, const ChainControlSetRecord&)>& f) {
  for (const auto& weyl : groups) {
    for (const auto& theta : testkit::all_subsets(weyl.rank())) {
      for (const auto& ft : testkit::all_subsets(weyl.rank())) {
        const FlagSpec spec{theta, ft};
        for (const auto& rec : enumerate_chain_control_sets(weyl, spec)) f(weyl, spec, rec);
      }
    }
  }
}

// <flag_type> contained in w<theta>, by literal root-set containment.
bool containment(const WeylGroup& weyl, const FlagSpec& spec, const WeylElement& w) {
  const auto& rs = weyl.root_system();
  std::set<Root> image;
  for (const auto& b : rs.span_subset(spec.theta)) image.insert(weyl.act(w, b));
  for (const auto& a : rs.span_subset(spec.flag_type)) {
    if (!image.contains(a)) return false;
  }
  return true;
}

Matrix diag3(double a, double b, double c) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

}  // namespace

int main() {
  const auto start = Clock::now();
  const auto groups = grid_groups();

  report(1, "Weyl group orders", [] {
    const std::vector<std::tuple<Family, int, std::size_t>> cases{
        {Family::A, 1, 2}, {Family::A, 2, 6}, {Family::A, 3, 24}, {Family::B, 2, 8}, {Family::G, 2, 12}};
    Outcome o;
    double slowest = 0.0;
    for (const auto& [f, n, order] : cases) {
      const auto t0 = Clock::now();
      const auto w = WeylGroup::generate(RootSystem::build(f, n));
      const double s = seconds_since(t0);
      slowest = std::max(slowest, s);
      o.detail += w.root_system().name() + "=" + std::to_string(w.order()) + " ";
      if (w.order() != order || s >= 1.0) o.pass = false;
    }
    o.detail += "slowest " + fmt(slowest) + " s";
    return o;
  });

  report(2, "center empty iff <flag_type> in w<theta>, exhaustive A1 A2 A3 B2", [&] {
    const auto t0 = Clock::now();
    long cells = 0, mismatches = 0;
    for_each_cell(groups, [&](const WeylGroup& weyl, const FlagSpec& spec, const ChainControlSetRecord& rec) {
      ++cells;
      if ((rec.dims.center == 0) != containment(weyl, spec, rec.w)) ++mismatches;
    });
    const double s = seconds_since(t0);
    return Outcome{mismatches == 0 && s < 10.0,
                   std::to_string(cells) + " cells, " + std::to_string(mismatches) + " mismatches, " + fmt(s) + " s"};
  });

  report(3, "s + c + u = dim F_theta over the grid", [&] {
    long cells = 0, bad = 0;
    for_each_cell(groups, [&](const WeylGroup& weyl, const FlagSpec& spec, const ChainControlSetRecord& rec) {
      ++cells;
      if (rec.dims.total() != flag_dim(weyl.root_system(), spec.theta) || rec.dims.total() != rec.dim_flag) ++bad;
    });
    return Outcome{bad == 0, std::to_string(cells) + " cells, " + std::to_string(bad) + " violations"};
  });

  report(4, "sigma+- annihilate a(flag_type cap w<theta>) exactly", [&] {
    long checks = 0, nonzero = 0;
    for_each_cell(groups, [&](const WeylGroup& weyl, const FlagSpec& spec, const ChainControlSetRecord& rec) {
      if (!rec.hyperbolic) return;
      const auto& rs = weyl.root_system();
      const std::size_t winv = weyl.inverse(weyl.index_of(rec.w));
      for (const auto& beta : rs.span_subset(spec.flag_type)) {
        if (!rs.in_span(weyl.act(weyl.element(winv), beta), spec.theta)) continue;
        // H_beta has the coroot coordinates of beta's root coordinates.
        AVector h{RationalVector(beta.coords().begin(), beta.coords().end())};
        for (const auto* sigma : {&*rec.sigma_plus, &*rec.sigma_minus}) {
          ++checks;
          if (rs.evaluate(*sigma, h) != 0) ++nonzero;
        }
      }
    });
    return Outcome{nonzero == 0, std::to_string(checks) + " evaluations, " + std::to_string(nonzero) + " nonzero"};
  });

  report(5, "sigma+- independent of the coset representative", [&] {
    long pairs = 0, bad = 0;
    for_each_cell(groups, [&](const WeylGroup& weyl, const FlagSpec& spec, const ChainControlSetRecord& rec) {
      if (!rec.hyperbolic) return;
      const auto& rs = weyl.root_system();
      const std::size_t w = weyl.index_of(rec.w);
      for (std::size_t a : weyl.subgroup(spec.flag_type)) {
        for (std::size_t b : weyl.subgroup(spec.theta)) {
          ++pairs;
          const WeylElement& other = weyl.element(weyl.multiply(weyl.multiply(a, w), b));
          if (!is_hyperbolic(weyl, spec, other)) {
            ++bad;
            continue;
          }
          for (Sign sign : {Sign::Plus, Sign::Minus}) {
            const auto s0 = sigma_functional(weyl, spec, rec.w, sign);
            const auto s1 = sigma_functional(weyl, spec, other, sign);
            for (int j = 0; j < rs.rank(); ++j) {
              if (rs.evaluate(s0, AVector::coroot(rs.rank(), j)) != rs.evaluate(s1, AVector::coroot(rs.rank(), j))) {
                ++bad;
              }
            }
          }
        }
      }
    });
    return Outcome{bad == 0, std::to_string(pairs) + " (w1, w2) pairs, " + std::to_string(bad) + " differences"};
  });

  report(6, "exactly one attractor (u = 0) and one repeller (s = 0) per enumeration", [&] {
    long enumerations = 0, bad = 0;
    for (const auto& weyl : groups) {
      for (const auto& theta : testkit::all_subsets(weyl.rank())) {
        for (const auto& ft : testkit::all_subsets(weyl.rank())) {
          ++enumerations;
          int att = 0, rep = 0;
          for (const auto& rec : enumerate_chain_control_sets(weyl, {theta, ft})) {
            att += rec.dims.unstable == 0;
            rep += rec.dims.stable == 0;
          }
          if (att != 1 || rep != 1) ++bad;
        }
      }
    }
    return Outcome{bad == 0, std::to_string(enumerations) + " enumerations, " + std::to_string(bad) + " violations"};
  });

  report(7, "regular flag type: every record hyperbolic", [&] {
    long records = 0, bad = 0;
    for_each_cell(groups, [&](const WeylGroup&, const FlagSpec& spec, const ChainControlSetRecord& rec) {
      if (!spec.flag_type.empty()) return;
      ++records;
      if (!rec.hyperbolic) ++bad;
    });
    return Outcome{bad == 0, std::to_string(records) + " records, " + std::to_string(bad) + " non-hyperbolic"};
  });

  report(8, "chain control sets on projective space", [] {
    Outcome o;
    const auto a2 = WeylGroup::generate(RootSystem::build(Family::A, 2));
    const auto plane = enumerate_chain_control_sets(a2, {SimpleRootSet::of({1}), SimpleRootSet()});
    o.detail = "P^2: " + std::to_string(plane.size());
    o.pass = plane.size() == 3;
    for (int d = 2; d <= 5; ++d) {
      const auto w = WeylGroup::generate(RootSystem::build(Family::A, d - 1));
      std::vector<int> rest;
      for (int i = 1; i < d - 1; ++i) rest.push_back(i);
      const auto recs = enumerate_chain_control_sets(w, {SimpleRootSet::of(rest), SimpleRootSet()});
      o.detail += ", P^" + std::to_string(d - 1) + ": " + std::to_string(recs.size());
      if (static_cast<int>(recs.size()) != d) o.pass = false;
    }
    return o;
  });

  report(9, "Iwasawa reassembly on 1000 random SL(3)", [] {
    std::mt19937_64 rng(9);
    std::vector<Matrix> samples;
    for (int i = 0; i < 1000; ++i) samples.push_back(testkit::random_sl(rng, 3));
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (const auto& g : samples) worst = std::max(worst, (iwasawa(g).reassemble() - g).norm() / g.norm());
    const double s = seconds_since(t0);
    return Outcome{worst <= 1e-10 && s < 1.0, "max relative residual " + fmt(worst) + ", " + fmt(s) + " s"};
  });

  report(10, "cocycle additivity and time reversal on 20 random SL(3) trajectories", [] {
    std::mt19937_64 rng(10);
    double add = 0.0, rev = 0.0;
    for (int i = 0; i < 20; ++i) {
      const auto spec = testkit::random_system(rng, 3, 2, 1e-3);
      const auto u = ControlSignal::random(spec, 0.5, 10.0, 1000 + i);
      const FlagPoint flag(testkit::random_rotation(rng, 3), {1, 1, 1});
      add = std::max(add, cocycle_additivity_residual(spec, u, 10.0, flag, 1.0));
      rev = std::max(rev, time_reversal_residual(spec, u, 10.0, flag, 1.0));
    }
    return Outcome{add <= 1e-6 && rev <= 1e-6, "additivity " + fmt(add) + ", time reversal " + fmt(rev)};
  });

  report(11, "K_theta invariance, d = 3, theta = {alpha_1}", [] {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 7);
    const SimpleRootSet theta = SimpleRootSet::of({0});
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Matrix psi = testkit::random_sl(rng, 3);
      const FlagPoint flag(testkit::random_rotation(rng, 3), {1, 1, 1});
      Matrix k = Matrix::Identity(3, 3);
      k.block(0, 0, 2, 2) = testkit::random_rotation(rng, 2);
      const Rational t(num(rng), den(rng));
      worst = std::max(worst, ktheta_invariance_residual(psi, flag, theta, RationalVector{t, 2 * t}, k));
    }
    return Outcome{worst <= 1e-8, "max residual " + fmt(worst) + " over 100 triples"};
  });

  const auto a2 = WeylGroup::generate(RootSystem::build(Family::A, 2));
  const Matrix x = diag3(2, 0, -2);
  const std::vector<SimpleRootSet> thetas{SimpleRootSet(), SimpleRootSet::of({0}), SimpleRootSet::of({1})};

  report(12, "determinant formula on X = diag(2,0,-2)", [&] {
    double worst = 0.0;
    int checks = 0;
    for (const auto& theta : thetas) {
      const FlagSpec spec{theta, SimpleRootSet()};
      for (const auto& rec : enumerate_chain_control_sets(a2, spec)) {
        if (!rec.hyperbolic) continue;
        for (Sign sign : {Sign::Plus, Sign::Minus}) {
          for (double t : {0.5, 1.0, 2.0}) {
            worst = std::max(worst, determinant_check(x, a2, spec, rec, sign, t).relative_error);
            ++checks;
          }
        }
      }
    }
    return Outcome{worst <= 1e-6, std::to_string(checks) + " checks, max relative error " + fmt(worst)};
  });

  report(13, "rate prediction on X = diag(2,0,-2) at T = 20", [&] {
    double worst = 0.0, mu = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (const auto& theta : thetas) {
      const FlagSpec spec{theta, SimpleRootSet()};
      for (const auto& rec : enumerate_chain_control_sets(a2, spec)) {
        const auto r = verify_rates(x, a2, spec, rec, RateOptions{20.0, 0.5, 1e-3, 0.01});
        worst = std::max(worst, r.max_relative_error);
        mu = std::min(mu, r.mu);
        if (r.attractor_slopes.size() != 3) ok = false;
        for (const auto& s : r.attractor_slopes) ok = ok && s.min_slope >= r.mu;
        ok = ok && r.passed;
      }
    }
    return Outcome{ok && worst <= 0.01 && mu > 0.0,
                   "max relative exponent error " + fmt(worst) + ", mu " + fmt(mu)};
  });

  report(14, "integrator against the matrix exponential at T = 1", [] {
    std::mt19937_64 rng(14);
    double worst = 0.0;
    std::vector<Matrix> xs{diag3(2, 0, -2)};
    for (int i = 0; i < 20; ++i) xs.push_back(testkit::traceless(testkit::gaussian(rng, 2 + i % 4, 2 + i % 4, 0.5)));
    for (const auto& m : xs) {
      const auto spec = ControlSystemSpec::autonomous(m, 1e-3);
      const Matrix g = integrate(spec, ControlSignal::constant(Vector(0)), 1.0).final_state();
      worst = std::max(worst, testkit::relative_error(g, testkit::expm(m, 1.0)));
    }
    return Outcome{worst <= 1e-8, std::to_string(xs.size()) + " generators, max relative error " + fmt(worst)};
  });

  std::printf("%s  %d failing criteria, total %.1f s\n", failures == 0 ? "PASS" : "FAIL", failures,
              seconds_since(start));
  return failures == 0 ? 0 : 1;
}
