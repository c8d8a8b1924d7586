#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "l1svm/formulation.hpp"
#include "l1svm/types.hpp"

namespace l1svm {
namespace {

DatasetError::Kind kind_of(const Dataset& d) {
  try {
    validate_dataset(d);
  } catch (const DatasetError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a DatasetError";
  return DatasetError::Kind::kEmpty;
}

TEST(ValidateDataset, MinimalDatasetIsValid) {
  EXPECT_NO_THROW(validate_dataset(Dataset({1}, {0.5}, 1)));
}

TEST(ValidateDataset, RejectsNonBinaryLabel) {
  EXPECT_EQ(kind_of(Dataset({0}, {0.5}, 1)), DatasetError::Kind::kNonBinaryLabel);
  EXPECT_EQ(kind_of(Dataset({2, 1}, {0.5, 1.0}, 1)), DatasetError::Kind::kNonBinaryLabel);
}

TEST(ValidateDataset, RejectsRowCountMismatch) {
  EXPECT_EQ(kind_of(Dataset({1, -1}, {0.5, 1.0, 2.0}, 1)), DatasetError::Kind::kDimensionMismatch);
  EXPECT_EQ(kind_of(Dataset::from_rows({1, -1}, {{1.0, 2.0}, {3.0}})),
            DatasetError::Kind::kDimensionMismatch);
}

TEST(ValidateDataset, RejectsNonFiniteFeatureAndEmpty) {
  EXPECT_EQ(kind_of(Dataset({1}, {std::numeric_limits<double>::quiet_NaN()}, 1)),
            DatasetError::Kind::kNonFiniteFeature);
  EXPECT_EQ(kind_of(Dataset({1}, {std::numeric_limits<double>::infinity()}, 1)),
            DatasetError::Kind::kNonFiniteFeature);
  EXPECT_EQ(kind_of(Dataset()), DatasetError::Kind::kEmpty);
}

TEST(ValidateConfig, SoftMarginNeedsPositiveFiniteLambda) {
  EXPECT_NO_THROW(validate_config({0.1, false}));
  EXPECT_NO_THROW(validate_config({0.0, true}));
  EXPECT_THROW(validate_config({0.0, false}), Error);
  EXPECT_THROW(validate_config({-0.1, false}), Error);
  EXPECT_THROW(validate_config({std::nan(""), false}), Error);
}

TEST(Solutions, NormsMatchComponents) {
  const Dataset d({1, -1}, {1.0, 2.0, -0.5, 0.25}, 2);
  const LpInstance lp = build_soft_lp(d, {0.3, false});
  const std::vector<double> x = {0.1, 0.7, 0.25, 0.0, 0.0, 1.5};
  const PrimalSolution s = make_primal(lp, x);
  EXPECT_EQ(s.xi, (std::vector<double>{0.1, 0.7}));
  EXPECT_EQ(s.beta_plus, (std::vector<double>{0.25, 0.0}));
  EXPECT_EQ(s.beta_minus, (std::vector<double>{0.0, 1.5}));
  double norm = 0.0, obj = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    norm += std::abs(x[k]);
    obj += lp.c_diag[k] * x[k];
  }
  EXPECT_EQ(s.norm_R, norm);
  EXPECT_DOUBLE_EQ(s.objective, obj);
  EXPECT_EQ(s.variables(), x);

  const DualSolution dual = make_dual(lp, {0.25, 0.5});
  EXPECT_EQ(dual.norm_r, 0.75);
  EXPECT_EQ(dual.objective, 0.75);
}

TEST(QueryLedger, TotalAndReset) {
  QueryLedger l{1, 2, 3, 4};
  EXPECT_EQ(l.total(), 10u);
  l.reset();
  EXPECT_EQ(l, QueryLedger{});
}

}  // namespace
}  // namespace l1svm
