#include <catch2/catch_amalgamated.hpp>

#include "gie/quadrature.hpp"
#include "gie/report.hpp"
#include "gie/units.hpp"

using namespace gie;
using units::Constants;
using units::Quantity;

TEST_CASE("planck scales from CODATA 2018") {
  const auto k = Constants::codata2018();
  CHECK(k.m_P == Catch::Approx(2.176434342051127e-8).epsilon(1e-12));
  CHECK(k.l_P == Catch::Approx(1.61625502392855e-35).epsilon(1e-12));
  CHECK(k.t_P == Catch::Approx(5.391246446661944e-44).epsilon(1e-12));
  // Exact in the internal representation, not merely approximate.
  CHECK(k.E_P == k.m_P * k.c * k.c);
  CHECK(k.l_P == k.c * k.t_P);
}

TEST_CASE("planck mode normalizes the fundamental scales") {
  const auto p = Constants::planck();
  CHECK(p.G == 1.0);
  CHECK(p.hbar == 1.0);
  CHECK(p.c == 1.0);
  CHECK(p.m_P == 1.0);
  CHECK(p.l_P == 1.0);
  CHECK(p.t_P == 1.0);
  CHECK(p.E_P == 1.0);
  CHECK(p.fine_structure() ==
        Catch::Approx(Constants::codata2018().fine_structure()).epsilon(1e-12));
}

TEST_CASE("to_planck examples") {
  const auto k = Constants::codata2018();
  CHECK(units::to_planck({k.m_P, units::mass}, k).value == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(units::to_planck({0.0, units::length}, k).value == 0.0);
  // 1 s in Planck times, against t_P = sqrt(hbar G / c^5) evaluated upfront.
  const double t_planck_si = 5.391246446661944e-44;
  CHECK(units::to_planck({1.0, units::time}, k).value ==
        Catch::Approx(1.0 / t_planck_si).epsilon(1e-12));
  CHECK_THROWS_AS(units::to_planck({std::nan(""), units::time}, k), ValidationError);
}

TEST_CASE("dim_check examples") {
  const auto k = Constants::codata2018();
  CHECK(units::dim_check({1.0, units::mass}, {2.0, units::mass}));
  CHECK_FALSE(units::dim_check({1.0, units::mass}, {1.0, units::length}));

  // G dQ^2 / (c^5 T^5) and hbar / T are both energies.
  const Quantity G{k.G, {-1, 3, -2, 0}};
  const Quantity dq{1.0, units::quadrupole};
  const Quantity c{k.c, units::velocity};
  const Quantity T{1.0, units::time};
  const Quantity hbar{k.hbar, units::action};
  const Quantity radiated = G * dq * dq / (units::pow(c, 5) * units::pow(T, 5));
  CHECK(units::dim_check(radiated, hbar / T));
  CHECK(radiated.dim == units::energy);

  // Test-particle displacement 3 G tau^2 dQ / D^4 is a length.
  const Quantity D{1.0, units::length};
  const Quantity displacement = 3.0 * G * T * T * dq / units::pow(D, 4);
  CHECK(displacement.dim == units::length);

  // The phase 6 G m tau d dQ / (hbar D^4) is dimensionless.
  const Quantity m{1.0, units::mass};
  const Quantity phase = 6.0 * G * m * T * D * dq / (hbar * units::pow(D, 4));
  CHECK(phase.dim == units::scalar);
}

TEST_CASE("to_planck is linear and invertible") {
  const auto k = Constants::codata2018();
  quad::SplitMix64 rng(42);
  for (int i = 0; i < 50; ++i) {
    const units::Dimension dim{static_cast<int>(rng.next() % 5) - 2,
                               static_cast<int>(rng.next() % 5) - 2,
                               static_cast<int>(rng.next() % 5) - 2,
                               static_cast<int>(rng.next() % 3) - 1};
    const double a = rng.uniform(-1e5, 1e5);
    const double b = rng.uniform(-1e5, 1e5);
    const Quantity qa{a, dim}, qb{b, dim};
    const double lhs = units::to_planck(qa + qb, k).value;
    const double rhs = units::to_planck(qa, k).value + units::to_planck(qb, k).value;
    CHECK(lhs == Catch::Approx(rhs).epsilon(1e-13).margin(1e-280));
    const double back = units::from_planck(units::to_planck(qa, k), k).value;
    CHECK(back == Catch::Approx(a).epsilon(1e-14).margin(1e-280));
  }
}

TEST_CASE("addition requires matching dimensions") {
  const Quantity a{1.0, units::mass};
  const Quantity b{1.0, units::length};
  CHECK_THROWS_AS(a + b, ValidationError);
  CHECK_THROWS_AS(a - b, ValidationError);
}

TEST_CASE("SI constants document") {
  const auto j = report::si_constants_json(Constants::codata2018());
  CHECK(j["G"].get<double>() == 6.67430e-11);
  CHECK(j["hbar"].get<double>() == 1.054571817e-34);
  CHECK(j["c"].get<double>() == 299792458.0);
  CHECK(j["k_e"].get<double>() == 8.9875517923e9);
  CHECK(j["e"].get<double>() == 1.602176634e-19);
}
