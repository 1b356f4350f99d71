#include "prsvd/errors.hpp"
#include "prsvd/filters.hpp"
#include "prsvd/kernels.hpp"
#include "prsvd/qr.hpp"
#include "prsvd/rng.hpp"
#include "prsvd/spectra.hpp"
#include "prsvd/svd.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace prsvd;
using prsvd::testing::frob_diff;

TEST(FilterSpec, CanonicalEquality) {
  EXPECT_EQ(FilterSpec::identity(), FilterSpec::power(0));
  EXPECT_EQ(FilterSpec::identity(), FilterSpec::polynomial({1}));
  EXPECT_EQ(FilterSpec::power(2), FilterSpec::polynomial({0, 0, 1}));
  EXPECT_NE(FilterSpec::power(1), FilterSpec::polynomial({1, 1}));
  EXPECT_TRUE(FilterSpec::power(0).is_identity());
  EXPECT_THROW(FilterSpec::polynomial({}), DomainError);
  EXPECT_THROW(FilterSpec::polynomial({1, 0}), DomainError);
  EXPECT_THROW(FilterSpec::power(-1), DomainError);
}

TEST(FilterSpec, ParseAndPrint) {
  EXPECT_EQ(parse_filter("identity"), FilterSpec::identity());
  EXPECT_EQ(parse_filter("power:3"), FilterSpec::power(3));
  EXPECT_EQ(parse_filter("poly:0.5,2"), FilterSpec::polynomial({0.5, 2}));
  EXPECT_EQ(parse_filter("power:3").to_string(), "power:3");
  EXPECT_EQ(parse_filter(parse_filter("poly:0.5,2").to_string()),
            FilterSpec::polynomial({0.5, 2}));
  for (const char *bad : {"", "power", "power:-1", "power:1.5", "poly:", "poly:1,0", "poly:a",
                          "cubic", "power:3x"}) {
    EXPECT_THROW(parse_filter(bad), ParseError) << bad;
  }
}

TEST(FilterSpec, ParseList) {
  const auto list = parse_filter_list("identity,poly:0.5,2,power:3");
  ASSERT_EQ(list.size(), 3u);
  EXPECT_EQ(list[1], FilterSpec::polynomial({0.5, 2}));
  EXPECT_EQ(list[2], FilterSpec::power(3));
  EXPECT_EQ(parse_filter_list("power:0,power:1,power:2").size(), 3u);
  EXPECT_THROW(parse_filter_list("identity,,power:1"), ParseError);
  EXPECT_THROW(parse_filter_list("2,identity"), ParseError);
}

TEST(EvalFilter, Examples) {
  EXPECT_EQ(eval_filter(FilterSpec::identity(), 0.7), 0.7);
  EXPECT_EQ(eval_filter(FilterSpec::power(1), 2), 8.0);
  EXPECT_EQ(eval_filter(FilterSpec::polynomial({1, -1}), 2), -6.0);
  EXPECT_THROW(eval_filter(FilterSpec::identity(), -1), DomainError);
  EXPECT_THROW(eval_filter(FilterSpec::power(200), 10), OverflowError);
}

TEST(EvalFilter, CanonicalFormsAgree) {
  for (double x : {0.0, 1e-3, 0.5, 1.0, 3.0, 1e3}) {
    const double id = eval_filter(FilterSpec::identity(), x);
    EXPECT_EQ(id, eval_filter(FilterSpec::power(0), x));
    EXPECT_EQ(id, eval_filter(FilterSpec::polynomial({1}), x));
  }
}

TEST(EvalFilterLogSq, Examples) {
  EXPECT_NEAR(eval_filter_log_sq(FilterSpec::power(0), std::exp(1.0)), 2.0, 1e-15);
  EXPECT_NEAR(eval_filter_log_sq(FilterSpec::power(10), 0.7), 42 * std::log(0.7), 1e-12);
  EXPECT_NEAR(eval_filter_log_sq(FilterSpec::power(10), 0.7), -14.980, 1e-3);
  EXPECT_EQ(eval_filter_log_sq(FilterSpec::identity(), 1), 0.0);
  EXPECT_THROW(eval_filter_log_sq(FilterSpec::polynomial({1, -1}), 1.0), DomainError);
  EXPECT_THROW(eval_filter_log_sq(FilterSpec::identity(), 0.0), DomainError);
}

TEST(EvalFilterLogSq, MatchesDirectWhereRepresentable) {
  const std::vector<FilterSpec> specs{FilterSpec::identity(), FilterSpec::power(3),
                                      FilterSpec::polynomial({0.5, 2}),
                                      FilterSpec::polynomial({1, -0.1, 0.01})};
  for (const auto &s : specs) {
    for (double x : {1e-4, 0.1, 0.7, 1.0, 2.5, 40.0}) {
      const double chi = eval_filter(s, x);
      EXPECT_NEAR(eval_filter_log_sq(s, x), std::log(chi * chi), 1e-11) << s.to_string() << " " << x;
    }
  }
  // Finite where chi^2 itself is not representable.
  EXPECT_NEAR(eval_filter_log_sq(FilterSpec::power(200), 10.0), 802 * std::log(10.0), 1e-9);
  EXPECT_NEAR(eval_filter_log_sq(FilterSpec::polynomial({1, 0, 1e-300}), 1e100),
              2 * (std::log(1e-300) + 5 * std::log(1e100)), 1e-9);
  EXPECT_NEAR(eval_filter_log_sq(FilterSpec::polynomial({1, 0, 1e-300}), 1e10),
              2 * std::log(1e10), 1e-12);
}

TEST(ApplyFilterSketch, IdentityIsPlainProduct) {
  RngStream rng(2);
  const Matrix a = gaussian_matrix(12, 9, rng);
  const Matrix om = gaussian_matrix(9, 4, rng);
  EXPECT_EQ(apply_filter_sketch(a, om, FilterSpec::identity()), matmul(a, om));
  EXPECT_THROW(apply_filter_sketch(a, Matrix(8, 4, 1.0), FilterSpec::identity()), DomainError);
}

TEST(ApplyFilterSketch, PowerOnDiagonalUnstabilized) {
  const Matrix a{{2, 0}, {0, 1}};
  const Matrix y =
      apply_filter_sketch(a, Matrix::identity(2), FilterSpec::power(1), PowerStabilization::None);
  EXPECT_EQ(y, (Matrix{{8, 0}, {0, 1}}));
}

TEST(ApplyFilterSketch, PolynomialMatchesDenseFormula) {
  RngStream rng(21);
  const Matrix a = gaussian_matrix(20, 15, rng);
  const Matrix om = gaussian_matrix(15, 5, rng);
  const Matrix z1 = matmul(a, om);
  const Matrix expect = 0.5 * z1 + 2.0 * matmul(a, matmul_tn(a, z1));
  const Matrix y = apply_filter_sketch(a, om, FilterSpec::polynomial({0.5, 2}));
  EXPECT_LE(frob_diff(y, expect), 1e-10 * frobenius_norm(expect));
}

TEST(ApplyFilterSketch, StabilizationPreservesRange) {
  RngStream rng(8);
  const auto syn = synthesize_matrix(powerlaw_profile(1, 30), 40, 35, rng);
  const Matrix om = gaussian_matrix(35, 6, rng);
  for (int q : {1, 2, 3}) {
    const auto spec = FilterSpec::power(q);
    const Matrix p0 = prsvd::testing::projector(
        thin_qr(apply_filter_sketch(syn.a, om, spec, PowerStabilization::None)).q);
    const Matrix p1 = prsvd::testing::projector(
        thin_qr(apply_filter_sketch(syn.a, om, spec, PowerStabilization::Frobenius)).q);
    const Matrix p2 = prsvd::testing::projector(
        thin_qr(apply_filter_sketch(syn.a, om, spec, PowerStabilization::Orthonormalize)).q);
    EXPECT_LE(frob_diff(p0, p1), 1e-8) << q;
    EXPECT_LE(frob_diff(p0, p2), 1e-8) << q;
  }
}

TEST(ApplyFilterSketch, HighDegreeStaysFullRankWhenOrthonormalized) {
  RngStream rng(4);
  const auto syn = synthesize_matrix(powerlaw_profile(1, 300), 300, 300, rng);
  const Matrix om = gaussian_matrix(300, 30, rng);
  const Matrix y = apply_filter_sketch(syn.a, om, FilterSpec::power(4));
  EXPECT_NO_THROW(thin_qr(y));
}

TEST(ApplyFilterSketch, PolynomialOverflowReported) {
  Matrix a = 1e80 * Matrix::identity(3);
  EXPECT_THROW(apply_filter_sketch(a, Matrix::identity(3), FilterSpec::polynomial({0, 0, 0, 1})),
               OverflowError);
}

TEST(ApplyFilterSketch, SpectralConsistency) {
  // Singular values of U chi(Sigma) V are |chi(sigma_i)|.
  std::mt19937_64 gen(3);
  const std::vector<FilterSpec> specs{FilterSpec::power(2), FilterSpec::polynomial({0.5, 2}),
                                      FilterSpec::polynomial({1, -0.3})};
  for (const auto &spec : specs) {
    const auto p = prsvd::testing::random_profile(gen, 3, 30, 0.1, 2.0);
    RngStream rng(gen());
    const auto syn = synthesize_matrix(p, p.size() + 4, p.size() + 2, rng);
    std::vector<double> chi(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      chi[i] = eval_filter(spec, p[i]);
    }
    const Matrix filtered = matmul(scale_columns(syn.u, chi), syn.v);
    auto got = singular_values(filtered);
    for (double &c : chi) {
      c = std::abs(c);
    }
    std::sort(chi.rbegin(), chi.rend());
    for (std::size_t i = 0; i < chi.size(); ++i) {
      EXPECT_NEAR(got[i], chi[i], 1e-9 * chi[0]) << spec.to_string();
    }
    // The dense filter equals the incremental sketch with Omega = I.
    const Matrix y = apply_filter_sketch(syn.a, Matrix::identity(syn.a.cols()), spec,
                                         PowerStabilization::None);
    EXPECT_LE(frob_diff(y, filtered), 1e-10 * frobenius_norm(filtered)) << spec.to_string();
  }
}
