#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "qconfine/info/relative_fisher.hpp"
#include "qconfine/info/report.hpp"
#include "qconfine/dw/solver.hpp"

using namespace qconfine;
using namespace qconfine::info;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;
const double ln_pi = std::log(pi);

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}

DensityProfile gaussian(double v, int points = 4001) {
  const double half = 12.0 * std::sqrt(v);
  std::vector<double> x, rho;
  for (int i = 0; i < points; ++i) {
    const double t = -half + 2.0 * half * i / (points - 1);
    x.push_back(t);
    rho.push_back(std::exp(-t * t / (2.0 * v)) / std::sqrt(2.0 * pi * v));
  }
  return line_profile(x, rho);
}

DensityProfile uniform_ball(int points = 20001) {
  std::vector<double> r, rho;
  for (int i = 0; i < points; ++i) {
    r.push_back(static_cast<double>(i) / (points - 1));
    rho.push_back(3.0);
  }
  return tabulated_profile(DensityKind::radial_r, r, rho);
}

}  // namespace

TEST_CASE("Gaussian line densities", "[info]") {
  for (double v : {0.5, 1.0, 2.5}) {
    const auto d = gaussian(v);
    CHECK(d.normalization_defect < 1e-10);
    CHECK_THAT(shannon(d), WithinAbs(0.5 * std::log(2.0 * pi * std::numbers::e * v), 1e-8));
    CHECK_THAT(onicescu(d), WithinRel(1.0 / (2.0 * std::sqrt(pi * v)), 1e-8));
    for (double lam : {0.6, 3.0})
      CHECK_THAT(renyi(d, lam), WithinAbs(0.5 * std::log(2.0 * pi * v) + std::log(lam) / (2.0 * (lam - 1.0)), 1e-8));
    CHECK_THAT(fisher_1d(d), WithinRel(1.0 / v, 1e-5));
  }
}

TEST_CASE("Fisher rejects a kink at an interior zero", "[info]") {
  std::vector<double> x, rho;
  for (int i = 0; i <= 200; ++i) {
    x.push_back(-1.0 + i / 100.0);
    rho.push_back(std::max(0.0, x.back()) * 2.0);
  }
  CHECK(code_of([&] { fisher_1d(line_profile(x, rho)); }) == ErrorCode::singular_density);
}

TEST_CASE("tabulated profiles validate their input", "[info]") {
  CHECK_THROWS_AS(line_profile({0.0, 1.0}, {1.0, 1.0}), Error);
  CHECK_THROWS_AS(line_profile({0.0, 2.0, 1.0}, {1.0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(line_profile({0.0, 1.0, 2.0}, {1.0, -1.0, 1.0}), Error);
  CHECK_THROWS_AS(tabulated_profile(DensityKind::radial_r, {-1.0, 0.0, 1.0}, {1.0, 1.0, 1.0}), Error);
  for (auto k : {DensityKind::line_1d, DensityKind::radial_r, DensityKind::radial_p, DensityKind::angular_theta})
    CHECK(parse_density_kind(to_string(k)) == k);
  CHECK_FALSE(parse_density_kind("cubic").has_value());
}

TEST_CASE("uniform ball", "[info]") {
  const auto rho = uniform_ball();
  const auto chi = angular_profile(0, 0);
  CHECK(rho.normalization_defect < 1e-8);
  CHECK_THAT(shannon(chi), WithinAbs(std::log(2.0), 1e-12));
  const auto s = shannon_net(rho, chi);
  CHECK_THAT(s.net, WithinAbs(std::log(4.0 * pi / 3.0), 1e-7));
  CHECK_THAT(onicescu_net(rho, chi), WithinRel(3.0 / (4.0 * pi), 1e-7));
  InfoReport rep;
  rep.s_net_r = s.net;
  rep.e_net_r = onicescu_net(rho, chi);
  CHECK_THAT(complexity(Order::E, Disorder::shannon(), 1.0, rep, Space::r), WithinAbs(1.0, 1e-6));
  // Renyi entropies of a uniform density do not depend on the order.
  for (double lam : {0.5, 2.0, 3.0}) CHECK_THAT(moment_net(rho, chi, lam).renyi, WithinAbs(s.net, 1e-7));
}

TEST_CASE("free 1s closed forms", "[info]") {
  const auto st = cha::cha_wavefunction(1, 0, cha::infinite_radius);
  const auto ms = cha::momentum_transform(st);
  const auto rho = radial_profile(st), pp = momentum_profile(ms);
  const auto chi = angular_profile(0, 0);
  CHECK_THAT(shannon_net(rho, chi).net, WithinAbs(3.0 + ln_pi, 1e-10));
  CHECK_THAT(onicescu_net(rho, chi), WithinRel(1.0 / (8.0 * pi), 1e-10));
  for (double lam : {0.6, 3.0})
    CHECK_THAT(moment_net(rho, chi, lam).renyi, WithinAbs(ln_pi - 3.0 * std::log(lam) / (1.0 - lam), 1e-10));
  // momentum density 8 / (pi^2 (1 + p^2)^4), integrals by extended-precision quadrature
  CHECK_THAT(shannon_net(pp, chi).net, WithinAbs(2.42186234116519, 1e-6));
  CHECK_THAT(moment_net(pp, chi, 0.6).renyi, WithinAbs(3.60150202012156, 1e-6));
  CHECK_THAT(moment_net(pp, chi, 3.0).renyi, WithinAbs(1.23732124387646, 1e-6));
  CHECK_THAT(onicescu_net(pp, chi), WithinRel(33.0 / (16.0 * pi * pi), 1e-6));
}

TEST_CASE("momentum moments below the wall threshold diverge", "[info]") {
  const auto ms = cha::momentum_transform(cha::cha_wavefunction(1, 0, 1.0));
  const auto pp = momentum_profile(ms);
  CHECK(code_of([&] { entropic_moment(pp, 0.45); }) == ErrorCode::divergent_integrand);
  CHECK(std::isfinite(entropic_moment(pp, 0.6)));
  const auto free_ms = cha::momentum_transform(cha::cha_wavefunction(1, 0, cha::infinite_radius));
  CHECK(std::isfinite(entropic_moment(momentum_profile(free_ms), 0.45)));
  ReportOptions opt;
  opt.lambdas = {0.45, 3.0};
  const auto rep = info_report(cha::cha_wavefunction(1, 0, 1.0), ms, opt);
  CHECK(std::isinf(rep.renyi.at(0.45).p));
  CHECK(std::isfinite(rep.renyi.at(0.45).r));
  CHECK(rep.warnings.size() == 1);
}

TEST_CASE("Renyi family behaviour", "[info]") {
  const auto st = cha::cha_wavefunction(2, 1, 3.0);
  const auto rho = radial_profile(st);
  const auto chi = angular_profile(1, 0);
  const double s = shannon_net(rho, chi).net;
  const double eps = 1e-4;
  const double mid = 0.5 * (moment_net(rho, chi, 1.0 - eps).renyi + moment_net(rho, chi, 1.0 + eps).renyi);
  CHECK_THAT(mid, WithinAbs(s, 1e-6));
  double prev = moment_net(rho, chi, 0.3).renyi;
  for (double lam : {0.6, 0.9, 1.5, 2.0, 3.0}) {
    const double r = moment_net(rho, chi, lam).renyi;
    CHECK(r < prev);
    prev = r;
  }
  for (double lam : {0.6, 3.0}) {
    const auto m = moment_net(rho, chi, lam);
    CHECK_THAT(m.tsallis, WithinAbs((1.0 - std::exp((1.0 - lam) * m.renyi)) / (lam - 1.0), 1e-12));
  }
  CHECK_THROWS_AS(moment_net(rho, chi, 1.0), Error);
  CHECK_THROWS_AS(moment_net(rho, chi, -0.5), Error);
}

TEST_CASE("Shannon and Onicescu move oppositely with the wall", "[info]") {
  double prev_s = -1e300, prev_e = 1e300;
  const auto chi = angular_profile(0, 0);
  for (double rc : {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const auto rho = radial_profile(cha::cha_wavefunction(1, 0, rc));
    const double s = shannon_net(rho, chi).net, e = onicescu_net(rho, chi);
    CHECK(s > prev_s);
    CHECK(e < prev_e);
    prev_s = s;
    prev_e = e;
  }
}

TEST_CASE("central Fisher information matches the free closed forms", "[info]") {
  for (int n = 1; n <= 5; ++n)
    for (int l = 0; l < n; ++l) {
      const auto st = cha::cha_wavefunction(n, l, cha::infinite_radius);
      for (int m = 0; m <= l; ++m) {
        const auto f = fisher_central(st, m);
        const auto c = fisher_fha_closed(n, l, m);
        CHECK_THAT(f.i_r, WithinRel(c.i_r, 1e-9));
        CHECK_THAT(f.i_p, WithinRel(c.i_p, 1e-9));
      }
    }
  const double ip[] = {12, 168, 828, 2592, 6300};
  for (int n = 1; n <= 5; ++n) {
    CHECK_THAT(fisher_fha_closed(n, 0, 0).i_r, WithinRel(4.0 / (n * n), 1e-15));
    CHECK_THAT(fisher_fha_closed(n, 0, 0).i_p, WithinRel(ip[n - 1], 1e-15));
  }
  CHECK_THAT(fisher_fha_closed(1, 0, 0, 2.0).i_r, WithinRel(16.0, 1e-15));
  CHECK_THROWS_AS(fisher_fha_closed(2, 1, 2), Error);
}

TEST_CASE("confined Fisher information and uncertainty", "[info]") {
  // listed single-state values
  const auto f = fisher_central(cha::cha_wavefunction(1, 0, 0.1));
  CHECK_THAT(f.i_r, WithinRel(3948.73709, 1e-5));
  CHECK_THAT(f.i_p, WithinRel(0.01119745, 1e-5));
  for (double rc : {0.2, 1.0, 5.0})
    for (auto [n, l] : {std::pair{1, 0}, {2, 1}, {3, 2}}) {
      const auto st = cha::cha_wavefunction(n, l, rc);
      const double r2 = cha::expectation(st, cha::Observable::r2), p2 = cha::expectation(st, cha::Observable::p2);
      CHECK(r2 * p2 >= 2.25);
      const auto fp = fisher_central(st, 0);
      CHECK(fp.i_r * fp.i_p >= 81.0 / (r2 * p2));
      CHECK_THAT(fp.i_r * fp.i_p, WithinRel(16.0 * r2 * p2, 1e-12));
    }
}

TEST_CASE("relative Fisher information against the nodeless reference", "[info][relative]") {
  for (int n = 2; n <= 8; ++n)
    for (int l = 0; l <= n - 2; ++l) {
      const auto st = cha::cha_wavefunction(n, l, cha::infinite_radius);
      const auto num = relative_fisher_numeric(st, circular_reference(n, l));
      const auto closed = relative_fisher_closed(n, l);
      CHECK_THAT(num.ir_r, WithinRel(closed.ir_r, 1e-9));
      CHECK_THAT(closed.ir_r_rational.value(), WithinRel(8.0 * (n - l - 1) / (n * n * n), 1e-15));
    }
  CHECK(relative_fisher_closed(8, 3).ir_r_rational.num == 1);
  CHECK(relative_fisher_closed(8, 3).ir_r_rational.den == 16);
  CHECK(relative_fisher_closed(3, 0).ir_r_rational.den == 27);
  CHECK(relative_fisher_closed(3, 0).ir_r_rational.num == 16);

  const auto z2 = cha::cha_wavefunction(3, 1, cha::infinite_radius, 2.0);
  CHECK_THAT(relative_fisher_numeric(z2, circular_reference(3, 1, 2.0)).ir_r,
             WithinRel(relative_fisher_closed(3, 1, 2.0).ir_r, 1e-9));
  CHECK_THAT(relative_fisher_closed(3, 1, 2.0).ir_r, WithinRel(4.0 * 8.0 / 27.0, 1e-15));
  CHECK_THROWS_AS(relative_fisher_closed(3, 2), Error);
}

TEST_CASE("relative Fisher information in momentum space", "[info][relative]") {
  cha::MomentumOptions opt;
  opt.with_derivative = true;
  const auto st = cha::cha_wavefunction(2, 0, cha::infinite_radius);
  const auto ms = cha::momentum_transform(st, {}, opt);
  const auto rf = relative_fisher_numeric(st, circular_reference(2, 0), &ms);
  // symbolic integration of the 2s amplitude against the 1/(1+4p^2)^2 reference
  CHECK_THAT(rf.ir_p, WithinRel(72.0, 1e-6));
  CHECK_THAT(rf.ir_r, WithinRel(1.0, 1e-10));
  const auto plain = cha::momentum_transform(st);
  CHECK_THROWS_AS(relative_fisher_numeric(st, circular_reference(2, 0), &plain), Error);
}

TEST_CASE("relative Fisher information between states", "[info][relative]") {
  const auto s1 = cha::cha_wavefunction(1, 0, cha::infinite_radius);
  const auto s2 = cha::cha_wavefunction(2, 0, cha::infinite_radius);
  CHECK_THAT(relative_fisher_numeric(s1, s1).ir_r, WithinAbs(0.0, 1e-12));
  CHECK_THAT(relative_fisher_numeric(s2, s1).ir_r, WithinRel(3.0, 1e-10));
  CHECK(code_of([&] { relative_fisher_numeric(s1, s2); }) == ErrorCode::divergent_integrand);
  const auto inner = cha::cha_wavefunction(1, 0, 1.0);
  CHECK(code_of([&] { relative_fisher_numeric(s1, inner); }) == ErrorCode::divergent_integrand);
  CHECK_THROWS_AS(relative_fisher_numeric(s1, cha::cha_wavefunction(2, 1, cha::infinite_radius)), Error);
}

TEST_CASE("closed-form relative Fisher maximum over n", "[info][relative]") {
  for (int l : {0, 1, 2, 3}) {
    const int n = relative_fisher_argmax(l);
    // 8 (n - l - 1) / n^3 peaks at n = 3(l + 1)/2
    const double peak = 1.5 * (l + 1.0);
    CHECK(std::abs(n - peak) <= 0.5);
  }
  CHECK(relative_fisher_argmax(1) == 3);
  CHECK(relative_fisher_argmax(3) == 6);
}

TEST_CASE("bound checks", "[info][bounds]") {
  InfoReport rep;
  rep.s_total = 7.0;
  auto v = bound_checks(rep, 3, 0.6, 3.0);
  CHECK_THAT(v.bbm_bound, WithinAbs(3.0 * (1.0 + ln_pi), 1e-14));
  CHECK_THAT(v.bbm_bound, WithinAbs(6.434190, 1e-6));
  CHECK(v.bbm_ok);
  CHECK_FALSE(v.renyi_checked);
  rep.renyi[0.6] = {1.0, 0.0, 0.0, 0.0, 0.0};
  rep.renyi[3.0] = {0.0, 5.0, 0.0, 0.0, 0.0};
  v = bound_checks(rep, 3, 0.6, 3.0);
  CHECK(v.renyi_checked);
  CHECK_THAT(v.renyi_bound, WithinAbs(6.173745, 1e-6));
  CHECK_FALSE(v.renyi_ok);
  CHECK_THAT(bound_checks(rep, 1, 0.6, 3.0).bbm_bound, WithinAbs(1.0 + ln_pi, 1e-14));
  CHECK_THROWS_AS(bound_checks(rep, 3, 0.5, 2.0), Error);
  CHECK(code_of([] { bound_checks(InfoReport{}, 3, 0.6, 3.0); }) == ErrorCode::incomplete_report);
}

TEST_CASE("complexities require their components", "[info]") {
  InfoReport rep;
  rep.e_net_r = 0.5;
  CHECK(code_of([&] { complexity(Order::E, Disorder::shannon(), 1.0, rep, Space::r); }) ==
        ErrorCode::incomplete_report);
  rep.s_net_r = 1.0;
  CHECK_THAT(complexity(Order::E, Disorder::shannon(), 2.0, rep, Space::r), WithinRel(0.5 * std::exp(2.0), 1e-15));
  CHECK(code_of([&] { complexity(Order::E, Disorder::renyi_of(3.0), 1.0, rep, Space::r); }) ==
        ErrorCode::incomplete_report);
  CHECK(code_of([&] { complexity(Order::I, Disorder::shannon(), 1.0, rep, Space::total); }) ==
        ErrorCode::incomplete_report);
  CHECK(to_string(ComplexityKey{Order::E, Disorder::shannon(), 1.0, Space::total}) == "ES_b=1_total");
}

TEST_CASE("hydrogenic information report", "[info][report]") {
  const auto st = cha::cha_wavefunction(1, 0, 0.1);
  const auto rep = info_report(st, cha::momentum_transform(st));
  CHECK_THAT(*rep.s_net_r, WithinAbs(-6.24450338, 2e-3));
  CHECK_THAT(*rep.s_net_p, WithinAbs(12.8535, 2e-3));
  CHECK_THAT(rep.renyi.at(0.6).r, WithinAbs(-6.04495302, 1e-4));
  CHECK_THAT(rep.renyi.at(3.0).p, WithinAbs(12.254494, 1e-4));
  CHECK_THAT(*rep.e_net_r, WithinRel(685.24426269, 1e-5));
  CHECK_THAT(*rep.e_net_p, WithinAbs(3.95e-06, 1e-7));
  CHECK(rep.complexities.size() == 36);
  REQUIRE(rep.bounds.has_value());
  CHECK(rep.bounds->bbm_ok);
  CHECK(rep.bounds->renyi_checked);
  CHECK(rep.bounds->renyi_ok);
  const auto key = ComplexityKey{Order::I, Disorder::renyi_of(0.6), 2.0 / 3.0, Space::total};
  CHECK_THAT(rep.complexities.at(key),
             WithinRel(*rep.i_r * *rep.i_p * std::exp(2.0 / 3.0 * rep.renyi.at(0.6).sum), 1e-14));
  CHECK_THAT(*rep.s_total, WithinAbs(*rep.s_net_r + *rep.s_net_p, 1e-14));
}

TEST_CASE("one-dimensional reports", "[info][report][dw]") {
  // a nearly harmonic well: V = x^2 with a vanishing quartic term saturates BBM
  const auto ho = dw::solve(dw::make_potential(1e-9, -1.0), 60);
  const auto h = info_report(ho, 0);
  CHECK(h.dimension == 1);
  CHECK_THAT(*h.s_total, WithinAbs(1.0 + ln_pi, 1e-6));
  CHECK_THAT(*h.i_r * *h.i_p, WithinRel(4.0, 1e-5));

  const auto sym = dw::solve(dw::make_potential(1.0, 10.0), 100);
  for (int k = 0; k < 4; ++k) {
    const auto rep = info_report(sym, k);
    CHECK(rep.bounds->bbm_ok);
    CHECK(rep.bounds->renyi_ok);
    CHECK(rep.warnings.empty());
  }
  const auto plus = info_report(dw::solve(dw::make_potential(1.0, 10.0, 0.7), 100), 1);
  const auto minus = info_report(dw::solve(dw::make_potential(1.0, 10.0, -0.7), 100), 1);
  CHECK_THAT(*plus.s_r, WithinAbs(*minus.s_r, 1e-8));
  CHECK_THAT(*plus.s_p, WithinAbs(*minus.s_p, 1e-8));
  CHECK_THAT(*plus.e_total, WithinRel(*minus.e_total, 1e-8));
}
