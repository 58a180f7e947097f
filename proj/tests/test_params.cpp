#include <doctest.h>

#include <cmath>

#include "sgd/constants.hpp"
#include "sgd/errors.hpp"
#include "sgd/params.hpp"

using namespace sgd;

namespace {
const RawParams kPaperRaw{};  // defaults are the reference parameters
}

TEST_CASE("derive_params fills the secondary quantities")
{
    const PhysicalParams p = derive_params(kPaperRaw);

    CHECK(p.k == doctest::Approx(1047.1975511965977).epsilon(1e-12));
    CHECK(p.omega == doctest::Approx(3.139448e11).epsilon(1e-4));
    CHECK(p.a0 == doctest::Approx(0.110434).epsilon(1e-4));

    // k*lambda = 2*pi up to one rounding
    CHECK(std::abs(p.k * p.lambda / (2.0 * constants::pi) - 1.0) < 4e-16);

    // a0 recomputed from the stored fields reproduces the stored value bit-for-bit
    CHECK(p.a0 == p.epsilon * p.hbar * p.k / p.m);
}

TEST_CASE("derive_params is deterministic and idempotent")
{
    const PhysicalParams a = derive_params(kPaperRaw);
    const PhysicalParams b = derive_params(kPaperRaw);
    CHECK(a.k == b.k);
    CHECK(a.omega == b.omega);
    CHECK(a.a0 == b.a0);
    CHECK(a.dx0 == b.dx0);
}

TEST_CASE("derive_params rejects bad inputs")
{
    RawParams r = kPaperRaw;
    r.m = -1.0;
    CHECK_THROWS_AS(derive_params(r), DomainError);
    r = kPaperRaw;
    r.lambda = 0.0;
    CHECK_THROWS_AS(derive_params(r), DomainError);
    r = kPaperRaw;
    r.dx0 = std::nan("");
    CHECK_THROWS_AS(derive_params(r), DomainError);
}

TEST_CASE("regime guards warn by default and throw under strict")
{
    RawParams r = kPaperRaw;
    r.dx0 = r.lambda / 10.0;  // wider than lambda/20
    const PhysicalParams p = derive_params(r, false);
    CHECK(!p.regime_warnings.empty());
    CHECK_THROWS_AS(derive_params(r, true), DomainError);

    r = kPaperRaw;
    r.x01 = -r.lambda / 5.0;  // farther out than lambda/10
    CHECK(!derive_params(r, false).regime_warnings.empty());
    CHECK_THROWS_AS(derive_params(r, true), DomainError);

    CHECK(derive_params(kPaperRaw, true).regime_warnings.empty());
}

TEST_CASE("rabi_and_horizon")
{
    const PhysicalParams p = derive_params(kPaperRaw);

    const RabiInfo r = rabi_and_horizon(p, 82.76);
    CHECK(r.Omega == doctest::Approx(9.152e5).epsilon(1e-3));
    CHECK(r.T0_max == doctest::Approx(1.093e-3).epsilon(1e-3));

    CHECK(rabi_and_horizon(p, 0.0).Omega == p.epsilon);
    CHECK_THROWS_AS(rabi_and_horizon(p, -0.1), DomainError);
}
