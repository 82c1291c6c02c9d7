#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qconfine/dw/rules.hpp"

using namespace qconfine;
using namespace qconfine::dw;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Lowest eigenvalues of -d2/dx2 + V on [-L, L] by second-order finite
// differences, Richardson-extrapolated from steps h and h/2.
std::vector<double> finite_difference_levels(const PotentialSpec& v, double half_width, int points, int count) {
  auto levels = [&](int n) {
    const double h = 2.0 * half_width / (n + 1);
    Eigen::VectorXd d(n), e(n - 1);
    for (int i = 0; i < n; ++i) d(i) = 2.0 / (h * h) + v(-half_width + (i + 1) * h);
    e.setConstant(-1.0 / (h * h));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s;
    s.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    return s.eigenvalues();
  };
  const auto coarse = levels(points), fine = levels(2 * points + 1);
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back((4.0 * fine(i) - coarse(i)) / 3.0);
  return out;
}

double integrate_density(const BasisSolution& s, int n, Space space) {
  const auto q = support_quadrature(s, space);
  const auto v = sample_state(s, n, q.nodes, space);
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) sum += q.weights[i] * v[i].density();
  return sum;
}

}  // namespace

TEST_CASE("optimal sigma roots", "[dw]") {
  CHECK_THAT(optimal_sigma(8, 0, 0, Parity::even), WithinAbs(1.0, 1e-13));
  const double s = optimal_sigma(1, 10, 100, Parity::even);
  const double oracle = numerics::bisect([](double x) { return 8 * x * x * x + 20 * x - 201; }, 0.0, 10.0, 1e-14);
  CHECK_THAT(s, WithinAbs(oracle, 1e-12));
  CHECK_THROWS_AS(optimal_sigma(0, 1, 10, Parity::none), Error);
  CHECK(optimal_sigma(1, -20, 10, Parity::odd) > 0.0);

  // The parity=none root is a stationary point of the trace over m = 0..N.
  for (double beta : {0.0, 3.0, 10.0, 25.0}) {
    const int n_basis = 60;
    const PotentialSpec v = make_potential(1.0, beta);
    const double sig = optimal_sigma(1.0, beta, n_basis - 1, Parity::none);
    const double h = 1e-5 * sig;
    const double d = (trace_closed_form(v, sig + h, n_basis) - trace_closed_form(v, sig - h, n_basis)) / (2 * h);
    const double scale = std::abs(trace_closed_form(v, sig, n_basis)) / sig;
    CHECK(std::abs(d) <= 1e-9 * scale);
  }
}

TEST_CASE("Hamiltonian matrix elements", "[dw]") {
  const PotentialSpec free_quartic{1.0, 0.0, 0.0, 0.0};
  const auto h = build_hamiltonian(free_quartic, 1.0, 8);
  CHECK_THAT(h(0, 0), WithinAbs(1.1875, 1e-15));

  const PotentialSpec adw{1.0, 3.0, 2.0, 0.0};
  const auto ha = build_hamiltonian(adw, 1.0, 8);
  CHECK_THAT(ha(1, 0), WithinAbs(1.0, 1e-15));
  CHECK(ha(1, 0) == ha(0, 1));

  const auto hs = build_hamiltonian(make_potential(1.0, 7.0), 1.3, 20);
  for (int l = 0; l < 20; ++l)
    for (int m = 0; m < 20; ++m) {
      const int d = std::abs(l - m);
      if (d != 0 && d != 2 && d != 4) CHECK(hs(l, m) == 0.0);
    }
  CHECK(hs.isApprox(hs.transpose(), 0.0));
}

TEST_CASE("Hamiltonian agrees with operator algebra", "[dw]") {
  // Build x and p^2 from ladder operators and form p^2 + V(x) directly.
  const int n = 30, big = n + 6;
  const double sigma = 0.8;
  const PotentialSpec v = make_potential(1.3, 4.0, 0.7);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(big, big);
  for (int m = 1; m < big; ++m) a(m - 1, m) = std::sqrt(double(m));
  const Eigen::MatrixXd x = (a + a.transpose()) / (2.0 * std::sqrt(sigma));
  const Eigen::MatrixXd d = a - a.transpose();
  const Eigen::MatrixXd p2 = -sigma * d * d;
  const Eigen::MatrixXd x2 = x * x;
  Eigen::MatrixXd ref = p2 + v.alpha * x2 * x2 - v.beta * x2 + v.gamma * x;
  ref.diagonal().array() += v.v0;
  const auto h = build_hamiltonian(v, sigma, n);
  CHECK((h - ref.topLeftCorner(n, n)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("momentum matrix is cospectral", "[dw]") {
  const PotentialSpec v = make_potential(1.0, 6.0, 1.5);
  const auto hx = build_hamiltonian(v, 1.7, 40, Space::position);
  const auto hp = build_hamiltonian(v, 1.7, 40, Space::momentum);
  const auto ex = numerics::sym_eig(hx), ep = numerics::sym_eig(hp);
  CHECK((ex.eigenvalues - ep.eigenvalues).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(hp(2, 0) == -hx(2, 0));
  CHECK(hp(4, 0) == hx(4, 0));
}

TEST_CASE("pure quartic ground state against a finite-difference oracle", "[dw]") {
  const auto sol = solve(make_potential(1.0, 0.0));
  CHECK(sol.converged);
  const auto fd = finite_difference_levels(make_potential(1.0, 0.0), 10.0, 4000, 4);
  for (int i = 0; i < 4; ++i) CHECK_THAT(sol.energies(i), WithinRel(fd[i], 1e-7));
  CHECK_THAT(sol.energies(0), WithinAbs(1.0603620904, 2e-10));
}

TEST_CASE("quasi-degenerate pair at beta = 5", "[dw]") {
  const PotentialSpec v = make_potential(1.0, 5.0);
  const auto sol = solve(v);
  const auto fd = finite_difference_levels(v, 10.0, 4000, 2);
  CHECK_THAT(sol.energies(1) - sol.energies(0), WithinRel(fd[1] - fd[0], 1e-5));
  // The gap closes with growing barrier.
  const auto deeper = solve(make_potential(1.0, 10.0));
  CHECK(deeper.energies(1) - deeper.energies(0) < 1e-3);
}

TEST_CASE("trace sum rule", "[dw]") {
  for (double gamma : {0.0, 2.5}) {
    const PotentialSpec v = make_potential(1.0, 10.0, gamma);
    const double sigma = optimal_sigma(1.0, 10.0, 99, Parity::none);
    const auto h = build_hamiltonian(v, sigma, 100);
    const auto e = numerics::sym_eig(h);
    const double closed = trace_closed_form(v, sigma, 100);
    CHECK_THAT(h.trace(), WithinRel(closed, 1e-12));
    CHECK_THAT(e.eigenvalues.sum(), WithinRel(closed, 1e-8));
  }
}

TEST_CASE("solution invariants", "[dw]") {
  for (double beta : {0.0, 5.0, 12.0}) {
    for (double gamma : {0.0, 1.3}) {
      const auto sol = solve(make_potential(1.0, beta, gamma));
      for (int n = 0; n < sol.n_basis; ++n) {
        CHECK_THAT(sol.coeffs.col(n).squaredNorm(), WithinAbs(1.0, 1e-10));
        CHECK(sol.energies(n) >= 0.0);
        if (n > 0) CHECK(sol.energies(n) >= sol.energies(n - 1));
      }
      CHECK(sol.parity_split == (gamma == 0.0));
    }
  }
}

TEST_CASE("parity sectors never mix for the symmetric well", "[dw]") {
  const auto sol = solve(make_potential(1.0, 15.0));
  for (int n = 0; n < 20; ++n) {
    double even = 0.0, odd = 0.0;
    for (int m = 0; m < sol.n_basis; ++m) (m % 2 ? odd : even) += sol.coeffs(m, n) * sol.coeffs(m, n);
    CHECK(std::min(even, odd) < 1e-24);
  }
}

TEST_CASE("mirror pair is isospectral with mirrored states", "[dw]") {
  const auto v = make_potential(1.0, 10.0, 3.0);
  const auto a = solve(v), b = solve(mirror(v));
  CHECK((a.energies - b.energies).head(40).cwiseAbs().maxCoeff() < 1e-10);
  const std::vector<double> xs{-3.1, -1.0, 0.2, 2.4};
  std::vector<double> neg;
  for (double x : xs) neg.push_back(-x);
  for (int n = 0; n < 5; ++n) {
    const auto pa = sample_state(a, n, xs, Space::position);
    const auto pb = sample_state(b, n, neg, Space::position);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK_THAT(std::abs(pa[i].re), WithinAbs(std::abs(pb[i].re), 1e-9));
  }
}

TEST_CASE("variational monotonicity in the basis size", "[dw]") {
  const auto v = make_potential(1.0, 8.0, 0.5);
  double prev[6];
  for (int nb : {20, 40, 60, 80}) {
    // Use a fixed sigma so the variational spaces are nested.
    const auto e = numerics::sym_eig(build_hamiltonian(v, 2.0, nb));
    for (int i = 0; i < 6; ++i) {
      if (nb > 20) CHECK(e.eigenvalues(i) <= prev[i] + 1e-12);
      prev[i] = e.eigenvalues(i);
    }
  }
}

TEST_CASE("wavefunctions are normalized in both spaces", "[dw]") {
  const auto sol = solve(make_potential(1.0, 10.0, 1.0));
  for (int n = 0; n < 6; ++n) {
    CHECK_THAT(integrate_density(sol, n, Space::position), WithinAbs(1.0, 1e-8));
    CHECK_THAT(integrate_density(sol, n, Space::momentum), WithinAbs(1.0, 1e-8));
  }
}

TEST_CASE("symmetric-well states have definite parity", "[dw]") {
  const auto sol = solve(make_potential(1.0, 10.0));
  const std::vector<double> xs{0.3, 1.1, 2.2, 3.0, 4.1};
  std::vector<double> neg;
  for (double x : xs) neg.push_back(-x);
  for (int n = 0; n < 8; ++n) {
    const auto p = sample_state(sol, n, xs, Space::position);
    const auto m = sample_state(sol, n, neg, Space::position);
    const double parity = n % 2 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK_THAT(m[i].re, WithinAbs(parity * p[i].re, 1e-9));
  }
}

TEST_CASE("energy expectation agrees between the spaces", "[dw]") {
  const auto v = make_potential(1.0, 6.0, 0.8);
  const auto sol = solve(v);
  const auto qx = support_quadrature(sol, Space::position);
  const auto qp = support_quadrature(sol, Space::momentum);
  for (int n = 0; n < 4; ++n) {
    const auto sx = sample_state(sol, n, qx.nodes, Space::position);
    const auto sp = sample_state(sol, n, qp.nodes, Space::momentum);
    // <T> = <p^2> from either space; <V> from position space.
    double t_x = 0.0, v_x = 0.0, t_p = 0.0;
    for (std::size_t i = 0; i < qx.size(); ++i) {
      t_x += qx.weights[i] * sx[i].dre * sx[i].dre;
      v_x += qx.weights[i] * sx[i].density() * v(qx.nodes[i]);
    }
    for (std::size_t i = 0; i < qp.size(); ++i) t_p += qp.weights[i] * sp[i].density() * qp.nodes[i] * qp.nodes[i];
    CHECK_THAT(t_x + v_x, WithinRel(sol.energies(n), 1e-7));
    CHECK_THAT(t_p + v_x, WithinRel(sol.energies(n), 1e-7));
  }
}

TEST_CASE("short grids are rejected", "[dw]") {
  const auto sol = solve(make_potential(1.0, 10.0));
  const std::vector<double> narrow{-1.0, 0.0, 1.0};
  CHECK_THROWS_AS(eval_wavefunction(sol, 0, narrow), Error);
  std::vector<double> wide;
  for (int i = 0; i <= 400; ++i) wide.push_back(-8.0 + 16.0 * i / 400);
  CHECK_NOTHROW(eval_wavefunction(sol, 0, wide));
  for (double& p : wide) p *= 2.5;
  CHECK_NOTHROW(eval_wavefunction(sol, 0, wide, Space::momentum));
}

TEST_CASE("effective nodes and occupancy follow the asymmetric-well table", "[dw]") {
  // (k range, n) -> well, effective nodes, at alpha = 1, beta = 10, delta_gamma = 2.
  const Well I = Well::I, II = Well::II;
  const Well wells[4][6] = {{I, II, I, II, I, II}, {I, I, II, I, II, I}, {I, I, I, II, I, II}, {I, I, I, I, II, I}};
  const int nodes[4][6] = {{0, 0, 1, 1, 2, 2}, {0, 1, 0, 2, 1, 3}, {0, 1, 2, 0, 3, 1}, {0, 1, 2, 3, 0, 4}};
  for (int r = 0; r < 4; ++r) {
    const double k = r + 0.5;
    const auto v = make_potential(1.0, 10.0, 2.0 * k);
    const auto sol = solve(v);
    for (int n = 0; n < 6; ++n) {
      const auto occ = well_occupancy(sol, n, v);
      CHECK_THAT(occ.frac_I + occ.frac_II, WithinAbs(1.0, 1e-10));
      CHECK(occ.label == wells[r][n]);
      CHECK(count_effective_nodes(sol, n) == nodes[r][n]);
      CHECK(predict_localization(k, n) == occ.label);
    }
  }
  CHECK(count_effective_nodes(solve(make_potential(1.0, 4.0)), 0) == 0);
}

TEST_CASE("single wells are rejected by the occupancy split", "[dw]") {
  const auto v = make_potential(1.0, 0.0, 1.0);
  CHECK_THROWS_AS(well_occupancy(solve(v), 0, v), Error);
  const auto weak = make_potential(1.0, 1.0, 5.0);
  try {
    well_occupancy(solve(weak), 0, weak);
    FAIL("expected not-double-well");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_double_well);
  }
}

TEST_CASE("quasi-degeneracy rule engine", "[dw]") {
  CHECK(predict_quasi_degeneracy(1.0, 1) == 2);
  CHECK(!predict_quasi_degeneracy(1.0, 2));
  CHECK(predict_quasi_degeneracy(2.0, 2) == 3);
  CHECK(!predict_quasi_degeneracy(2.0, 3));
  CHECK(!predict_quasi_degeneracy(2.0, 1));  // n < k
  for (int n = 0; n < 6; ++n) CHECK(!predict_quasi_degeneracy(0.5, n));
  CHECK(predict_quasi_degeneracy(0.0, 0) == 1);
}

TEST_CASE("localization rule engine", "[dw]") {
  CHECK(predict_localization(2.0, 3) == Well::both);
  CHECK(predict_localization(1.5, 2) == Well::II);  // n even, floor(k) odd
  CHECK(predict_localization(3.5, 1) == Well::I);   // n < k
  CHECK(predict_localization(2.5, 4) == Well::I);   // both even
  CHECK(predict_localization(1.5, 3) == Well::I);   // both odd
  CHECK(predict_localization(2.5, 3) == Well::II);  // n odd, floor(k) even
}

TEST_CASE("quasi-degenerate pairs appear at integer k", "[dw]") {
  // k = 1 (gamma = 2): states 1 and 2 nearly coincide.
  const auto sol = solve(make_potential(1.0, 10.0, 2.0));
  const auto off = solve(make_potential(1.0, 10.0, 3.0));
  CHECK(sol.energies(2) - sol.energies(1) < 0.2 * (off.energies(2) - off.energies(1)));
}

TEST_CASE("transition sweep", "[dw]") {
  const auto t0 = detect_transitions(1.0, 10.0, 0.0, 3.0, 0.05, 0);
  REQUIRE(t0.gammas.size() == 1);
  CHECK(t0.gammas[0] < 0.05);
  const auto t1 = detect_transitions(1.0, 10.0, 0.0, 5.0, 0.05, 1);
  REQUIRE(t1.gammas.size() == 2);
  CHECK_THAT(t1.gammas[1], WithinAbs(2.0, 0.1));
  CHECK_THAT(t1.spacing, WithinAbs(2.0, 0.1));
  CHECK_THROWS_AS(detect_transitions(1.0, 10.0, 0.0, 3.0, 0.1, 0), Error);
}
