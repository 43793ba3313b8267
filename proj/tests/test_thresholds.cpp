#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include "lw/thresholds.hpp"
#include "lw/trop_path.hpp"

using namespace lw;

namespace {

mpz_class fact(unsigned long k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return f;
}

mpz_class zpow(const mpz_class& base, unsigned long e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

}  // namespace

TEST_CASE("threshold integer matches the hand-reduced closed form",
          "[thresholds]") {
  // r=2, theta=1/2: the ceiling term dominates and reduces to (8 (19!)^24)^2.
  const mpz_class inner = 8 * zpow(fact(19), 24);
  const mpz_class expect = inner * inner;
  CHECK(min_valid_t_exact(2, make_rat(1, 2)) == expect);

  const std::string dec = min_valid_t(2, make_rat(1, 2));
  CHECK(dec.size() == 822);
  CHECK(dec.substr(0, 20) == "77753830273823839873");
  CHECK(min_valid_t_digits(2, make_rat(1, 2)) == 822);

  // Bit length ~ 2 (24 log2(19!) + 3).
  const double bits =
      static_cast<double>(mpz_sizeinbase(expect.get_mpz_t(), 2));
  const double predicted =
      2.0 * (24.0 * std::lgamma(20.0) / std::log(2.0) + 3.0);
  CHECK(std::abs(bits - predicted) <= 2.0);
}

TEST_CASE("threshold formula takes a genuine ceiling when needed",
          "[thresholds]") {
  // 1 - theta = 23/24: the prime 23 does not divide 19!, so the division
  // rounds. The inner value must then satisfy the ceiling inequalities.
  const Rat theta = make_rat(1, 24);
  const mpz_class v = min_valid_t_exact(2, theta);
  REQUIRE(mpz_perfect_square_p(v.get_mpz_t()) != 0);
  mpz_class inner;
  mpz_sqrt(inner.get_mpz_t(), v.get_mpz_t());
  const mpz_class num = zpow(fact(19), 24) * (24 * 24 * 24);
  const mpz_class den(23 * 23 * 23);
  CHECK(num % den != 0);
  CHECK(inner * den >= num);
  CHECK((inner - 1) * den < num);
}

TEST_CASE("threshold integer is monotone in r and theta", "[thresholds]") {
  const Rat half = make_rat(1, 2);
  CHECK(min_valid_t_exact(2, half) < min_valid_t_exact(3, half));
  CHECK(min_valid_t_exact(3, half) < min_valid_t_exact(4, half));
  CHECK(min_valid_t_exact(2, make_rat(1, 4)) < min_valid_t_exact(2, half));
  CHECK(min_valid_t_exact(2, half) < min_valid_t_exact(2, make_rat(3, 4)));

  CHECK_THROWS_AS(min_valid_t_exact(1, half), ConfigError);
  CHECK_THROWS_AS(min_valid_t_exact(13, half), ConfigError);
  CHECK_THROWS_AS(min_valid_t_exact(2, Rat(0)), ConfigError);
  CHECK_THROWS_AS(min_valid_t_exact(2, Rat(1)), ConfigError);
}

TEST_CASE("distance bound evaluates the closed form", "[thresholds]") {
  const BigFloat t4 = BigFloat::from_long(10000, 128);
  CHECK(delta_bound(2, t4) == Catch::Approx(32.8915).epsilon(1e-4));

  // t = 10^100: 2 (2 log10 19 + 4 log10 18!) / 100.
  const BigFloat t100 = pow_rat(BigFloat::from_long(10, 512), Rat(100));
  CHECK(delta_bound(2, t100) == Catch::Approx(1.31565).epsilon(1e-4));

  // Doubling t shrinks the bound toward zero.
  BigFloat t = BigFloat::from_long(100, 256);
  double prev = delta_bound(2, t);
  for (int k = 0; k < 6; ++k) {
    t = t + t;
    const double cur = delta_bound(2, t);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(delta_bound(2, t100) < delta_bound(2, t4) / 20.0);

  CHECK_THROWS_AS(delta_bound(2, BigFloat::from_long(1, 64)), ConfigError);
  CHECK_THROWS_AS(delta_bound(1, t4), ConfigError);
}

TEST_CASE("distance bound guarantee threshold is exact", "[thresholds]") {
  const mpz_class thr = delta_threshold_exact(2);
  CHECK(thr == fact(18) * fact(18));

  CHECK_FALSE(delta_guaranteed(2, BigFloat::from_long(1000000, 128)));
  CHECK(delta_guaranteed(2, BigFloat::from_rat(pow2(106), 128)));
  CHECK_FALSE(delta_guaranteed(2, BigFloat::from_rat(pow2(105), 128)));

  const BigFloat exact = BigFloat::from_decimal(thr.get_str(), 256);
  CHECK(delta_guaranteed(2, exact));
  CHECK_FALSE(delta_guaranteed(2, exact - BigFloat::from_long(1, 256)));
}

TEST_CASE("distance budget combines both terms", "[thresholds]") {
  const BigFloat t4 = BigFloat::from_long(10000, 128);
  const double expect = std::log(36.0) / std::log(10000.0) + delta_bound(2, t4);
  CHECK(dinf_budget(2, 0.5, t4) == Catch::Approx(expect).epsilon(1e-12));
  CHECK(dinf_budget(2, 0.5, t4) == Catch::Approx(33.2806).epsilon(1e-3));

  const BigFloat t8 = BigFloat::from_long(100000000, 128);
  CHECK(dinf_budget(2, 0.5, t8) < dinf_budget(2, 0.5, t4));

  CHECK_THROWS_AS(dinf_budget(2, 0.0, t4), ConfigError);
  CHECK_THROWS_AS(dinf_budget(2, 1.0, t4), ConfigError);
}

TEST_CASE("neighborhood separation constant for small r", "[thresholds]") {
  for (int r = 2; r <= 8; ++r)
    CHECK(epsilon0(r) == make_rat(1, 3L * (1L << (r - 1))));
  CHECK(epsilon0(2) == make_rat(1, 6));
  CHECK(epsilon0(8) == make_rat(1, 384));
}
