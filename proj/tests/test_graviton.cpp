#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "gie/graviton.hpp"
#include "gie/oracles.hpp"

using namespace gie;
namespace gw = gie::graviton;
namespace qa = gie::quasiatom;
using std::numbers::pi;
using gw::complex;

namespace {
const units::Constants planck = units::Constants::planck();

gw::Vec3 random_direction(quad::SplitMix64& rng) {
  while (true) {
    gw::Vec3 v{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const double n = gw::dot(v, v);
    if (n > 1e-4 && n < 1.0) return gw::normalized(v);
  }
}
}  // namespace

TEST_CASE("polarization tensor invariants over random directions") {
  quad::SplitMix64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto k = random_direction(rng);
    for (char kind : {'+', 'x'}) {
      const auto p = gw::make_polarization(k, kind);
      double trace = 0.0, norm2 = 0.0;
      for (int i = 0; i < 3; ++i) {
        trace += p.e[i][i];
        double row_dot_k = 0.0;
        for (int j = 0; j < 3; ++j) {
          CHECK(p.e[i][j] == Catch::Approx(p.e[j][i]).margin(1e-14));
          row_dot_k += p.e[i][j] * p.k_hat[j];
          norm2 += p.e[i][j] * p.e[i][j];
        }
        CHECK(row_dot_k == Catch::Approx(0.0).margin(1e-13));
      }
      CHECK(trace == Catch::Approx(0.0).margin(1e-13));
      CHECK(norm2 == Catch::Approx(2.0).epsilon(1e-13));
    }
  }
  CHECK(gw::plus_z().e[0][0] == Catch::Approx(1.0).margin(1e-14));
  CHECK(gw::plus_z().e[1][1] == Catch::Approx(-1.0).margin(1e-14));
}

TEST_CASE("strain amplitude") {
  CHECK(gw::strain_amplitude(1.0, 1.0, planck) ==
        Catch::Approx(std::sqrt(16.0 * pi)).epsilon(1e-14));
  CHECK(gw::strain_amplitude(4.0, 1.0, planck) ==
        Catch::Approx(gw::strain_amplitude(1.0, 1.0, planck) / 2.0).epsilon(1e-14));
  CHECK_THROWS_AS(gw::strain_amplitude(0.0, 1.0, planck), ValidationError);
}

TEST_CASE("spherical tensor decomposition identity") {
  quad::SplitMix64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const double theta = std::acos(rng.uniform(-1.0, 1.0));
    const double phi = rng.uniform(0.0, 2.0 * pi);
    const auto lhs = gw::traceless_direction_tensor(theta, phi);
    const auto rhs = gw::spherical_tensor_expansion(theta, phi);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CHECK(rhs[i][j].real() == Catch::Approx(lhs[i][j]).margin(1e-12));
        CHECK(rhs[i][j].imag() == Catch::Approx(0.0).margin(1e-12));
      }
  }
}

TEST_CASE("spherical unit tensors are symmetric and traceless") {
  for (int m = -2; m <= 2; ++m) {
    const auto Y = gw::spherical_unit_tensor(m);
    complex trace = 0.0;
    for (int i = 0; i < 3; ++i) {
      trace += Y[i][i];
      for (int j = 0; j < 3; ++j) CHECK(Y[i][j] == Y[j][i]);
    }
    CHECK(std::abs(trace) == 0.0);
  }
  CHECK_THROWS_AS(gw::spherical_unit_tensor(3), ValidationError);
}

TEST_CASE("phi selection integrals") {
  using gw::PhiIntegrand;
  CHECK(gw::phi_selection_integral(2, PhiIntegrand::cos2phi) == complex(pi, 0.0));
  CHECK(gw::phi_selection_integral(-2, PhiIntegrand::cos2phi) == complex(pi, 0.0));
  CHECK(gw::phi_selection_integral(0, PhiIntegrand::cos2phi) == complex(0.0, 0.0));
  CHECK(gw::phi_selection_integral(1, PhiIntegrand::cos2phi) == complex(0.0, 0.0));
  CHECK(gw::phi_selection_integral(2, PhiIntegrand::sin2phi) == complex(0.0, pi));
  CHECK(gw::phi_selection_integral(-2, PhiIntegrand::sin2phi) == complex(0.0, -pi));
  for (int n = -4; n <= 4; ++n) {
    for (auto which : {PhiIntegrand::cos2phi, PhiIntegrand::sin2phi}) {
      const auto closed = gw::phi_selection_integral(n, which);
      const auto numeric = gw::phi_selection_integral_quadrature(n, which);
      CHECK(std::abs(closed - numeric) < 1e-12);
    }
  }
}

TEST_CASE("selection rules") {
  CHECK(gw::selection_rule(0, 1) == gw::Transition::forbidden);
  CHECK(gw::selection_rule(0, 2) == gw::Transition::allowed);
  CHECK(gw::selection_rule(1, 1) == gw::Transition::forbidden);
  CHECK(gw::selection_rule(1, 3) == gw::Transition::allowed);
  CHECK(gw::selection_rule(2, 0) == gw::Transition::allowed);
  CHECK(gw::selection_note(0, 1) == "electromagnetically allowed but gravitationally forbidden");
}

TEST_CASE("quadrupole matrix elements vanish for 1s-2p") {
  CHECK(std::abs(gw::quadrupole_matrix_element(qa::k1s, qa::k2p0, gw::plus_z())) < 1e-10);
  CHECK(std::abs(gw::quadrupole_matrix_element(qa::k1s, qa::k2p0, gw::cross_z())) < 1e-10);
  // delta-l = 0 with the z-propagating polarizations also vanishes.
  CHECK(std::abs(gw::quadrupole_matrix_element(qa::k2p0, qa::k2p0, gw::plus_z())) < 1e-10);
}

TEST_CASE("1s-3d(+-2) element is nonzero and agrees across both paths") {
  const qa::Orbital d2{3, 2, 2}, dm2{3, 2, -2};
  const auto q_quad = gw::quadrupole_matrix_element_quadrature(qa::k1s, d2, gw::plus_z());
  const auto q_sph = gw::quadrupole_matrix_element_spherical(qa::k1s, d2, gw::plus_z());
  // radial <1s|rho^2|3d> * angular pi-integral path gives 81/128.
  CHECK(q_quad.real() == Catch::Approx(81.0 / 128.0).epsilon(1e-8));
  CHECK(std::abs(q_quad.imag()) < 1e-10);
  CHECK(std::abs(q_quad - q_sph) < 1e-8);
  const auto q_m = gw::quadrupole_matrix_element_quadrature(qa::k1s, dm2, gw::plus_z());
  CHECK(q_m.real() == Catch::Approx(81.0 / 128.0).epsilon(1e-8));
}

TEST_CASE("hermiticity of the quadrupole form for real polarization") {
  const std::vector<std::pair<qa::Orbital, qa::Orbital>> pairs{
      {qa::k1s, {3, 2, 2}}, {qa::k2s, {3, 2, 0}}, {{2, 1, 1}, {3, 2, 1}}};
  for (const auto& [a, b] : pairs) {
    const auto ab = gw::quadrupole_matrix_element_quadrature(a, b, gw::plus_z());
    const auto ba = gw::quadrupole_matrix_element_quadrature(b, a, gw::plus_z());
    CHECK(std::abs(ab - std::conj(ba)) < 1e-10);
  }
}

TEST_CASE("first-order amplitude") {
  const complex me{0.8, 0.1};
  CHECK(std::abs(gw::first_order_amplitude({0.0, 0.0}, 1.0, 0.7, 5.0, 1.0, 0.25, 1.0, planck)) ==
        0.0);
  CHECK(std::abs(gw::first_order_amplitude(me, 1.0, 0.7, 0.0, 1.0, 0.25, 1.0, planck)) < 1e-12);

  // Against direct numeric time quadrature for random detunings.
  quad::SplitMix64 rng(4242);
  for (int i = 0; i < 10; ++i) {
    const double w_ab = rng.uniform(0.4, 2.0);
    const double w = rng.uniform(0.3, 2.4);
    const double t = rng.uniform(0.5, 8.0);
    const auto closed = gw::first_order_amplitude(me, w_ab, w, t, 1.0, 0.25, 1.0, planck);
    const complex I{0.0, 1.0};
    complex num = 0.0;
    const int n = 60000;
    const double h = t / n;
    for (int j = 0; j <= n; ++j) {
      const double wgt = (j == 0 || j == n) ? 1.0 : (j % 2 ? 4.0 : 2.0);
      num += wgt * std::sin(w * j * h) * std::exp(I * w_ab * (j * h));
    }
    num *= h / 3.0;
    const complex pref =
        I * 0.25 / planck.c * std::sqrt(pi * planck.G * std::pow(w, 3) / planck.hbar);
    const complex via_quad = pref * me * (-2.0) * num;
    CHECK(std::abs(closed - via_quad) < 1e-10);
  }
}

TEST_CASE("resonant amplitude enters secular t^2 growth of |a|^2") {
  // At exact resonance the secular term grows like t once omega t >> 1; at
  // whole carrier periods the bounded antiresonant term vanishes exactly.
  const complex me{1.0, 0.0};
  const double w = 1.3;
  const double t1 = 16.0 * pi / w;
  const auto a1 = gw::first_order_amplitude(me, w, w, t1, 1.0, 0.25, 1.0, planck);
  const auto a2 = gw::first_order_amplitude(me, w, w, 2.0 * t1, 1.0, 0.25, 1.0, planck);
  CHECK(std::norm(a2) / std::norm(a1) == Catch::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("second-order constant rate") {
  const std::vector<gw::Channel> toy{{{0.7, 0.0}, {1.3, 0.0}, 1.9}};
  const auto r = gw::second_order_rate(toy, 1.2, 1.8, 3.0, 1.0, 0.25, 1.0, planck);
  CHECK(r.on_resonance);
  CHECK(r.rate > 0.0);

  // Zero matrix-element chain kills the rate.
  const std::vector<gw::Channel> dead{{{0.0, 0.0}, {1.3, 0.0}, 1.9}};
  CHECK(gw::second_order_rate(dead, 1.2, 1.8, 3.0, 1.0, 0.25, 1.0, planck).rate == 0.0);

  // Off the resonance surface: zero with a warning flag.
  const auto off = gw::second_order_rate(toy, 1.2, 1.9, 3.0, 1.0, 0.25, 1.0, planck);
  CHECK_FALSE(off.on_resonance);
  CHECK(off.rate == 0.0);

  // V^-2 scaling at fixed matrix elements.
  const auto r2 = gw::second_order_rate(toy, 1.2, 1.8, 3.0, 2.0, 0.25, 1.0, planck);
  CHECK(r.rate / r2.rate == Catch::Approx(4.0).epsilon(1e-12));

  // A drive resonant with the intermediate level is rejected.
  const std::vector<gw::Channel> pole{{{0.7, 0.0}, {1.3, 0.0}, 1.2}};
  CHECK_THROWS_AS(gw::second_order_rate(pole, 1.2, 1.8, 3.0, 1.0, 0.25, 1.0, planck),
                  ValidationError);
}

TEST_CASE("second-order rate is real and nonnegative for random toy systems") {
  quad::SplitMix64 rng(321);
  for (int i = 0; i < 25; ++i) {
    std::vector<gw::Channel> chans;
    const int n_chan = 1 + static_cast<int>(rng.next() % 3);
    for (int c = 0; c < n_chan; ++c)
      chans.push_back({{rng.uniform(-1, 1), rng.uniform(-1, 1)},
                       {rng.uniform(-1, 1), rng.uniform(-1, 1)},
                       rng.uniform(2.2, 5.0)});
    const double w_ab = rng.uniform(2.0, 4.0);
    const double w1 = rng.uniform(0.5, 1.9);
    const auto r = gw::second_order_rate(chans, w1, w_ab - w1, w_ab, 1.0, 0.25, 1.0, planck);
    CHECK(r.rate >= 0.0);
    CHECK(std::isfinite(r.rate));
  }
}

TEST_CASE("Dyson time-quadrature oracle matches the closed form") {
  const double w1 = 1.2, w2 = 1.8, w_ag = 1.1, w_gb = 1.9;
  const double q2 = 0.7, q1 = 1.3, mu = 0.25, M = 1.0, V = 1.0;
  const std::vector<gw::Channel> toy{{{q2, 0.0}, {q1, 0.0}, w_gb}};
  const auto closed = gw::second_order_rate(toy, w1, w2, 3.0, V, mu, M, planck);
  const double t = 500.0;
  const auto a2 =
      oracles::dyson_second_order_amplitude(w1, w2, w_ag, w_gb, q2, q1, mu, M, V, t, 1000000,
                                            planck);
  CHECK(oracles::dyson_rate_estimate(a2, t) == Catch::Approx(closed.rate).epsilon(0.02));
}

TEST_CASE("nominal printed rate and density-of-states variant") {
  const double w_bg = 1.9, w_ga = 1.1, w_gb = 1.9;
  const double nominal =
      gw::second_order_rate_nominal({0.7, 0.0}, {1.3, 0.0}, w_bg, w_ga, w_gb, 1.0, 0.25, 1.0,
                                    planck);
  const double pref = 0.25 * 0.25 * pi * planck.G / (planck.hbar * 1.0 * 1.0 * planck.c * planck.c);
  const double want = 0.5 * pi * pref * pref * std::pow(w_bg, 3) * std::pow(w_ga, 3) *
                      std::norm(complex(0.7, 0.0) * complex(1.3, 0.0) / w_gb);
  CHECK(nominal == Catch::Approx(want).epsilon(1e-13));

  const std::vector<gw::Channel> toy{{{0.7, 0.0}, {1.3, 0.0}, 1.9}};
  const double rho = 2.5;
  const double with_dos =
      gw::second_order_rate_with_dos(toy, 1.2, 1.8, 1.0, 0.25, 1.0, rho, planck);
  const double base = gw::second_order_rate_with_dos(toy, 1.2, 1.8, 1.0, 0.25, 1.0, 1.0, planck);
  CHECK(with_dos == Catch::Approx(rho * base).epsilon(1e-13));
}

TEST_CASE("orbital basis enumeration") {
  const auto basis = gw::orbital_basis(3);
  CHECK(basis.size() == 14);  // 1 + 4 + 9 states through n = 3
  for (const auto& o : basis) CHECK_NOTHROW(o.validate());
}
