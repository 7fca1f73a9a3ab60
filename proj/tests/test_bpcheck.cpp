#include "util.hpp"

#include <gtest/gtest.h>

using namespace fpsg;

namespace {

// Sampled free pair (X, Y): rational series, products stay cheap.
std::pair<Series, Series> sampled_free_pair(std::size_t order, std::uint64_t seed) {
	Chain chain = Chain::one_param_base(order, VectorField::basis(order, 1), "X")
	                  .free_product_step({{"Y", Word::letter("X")}});
	Chain sampled = chain.substituted(sample_assignment(seed, chain.registry()));
	return {sampled.generator("X"), sampled.generator("Y")};
}

} // namespace

TEST(CommutationFree, Examples) {
	Series e1 = exp(VectorField::basis(4, 1));
	Series e2 = exp(VectorField::basis(4, 2));
	Series e1_doubled = exp(VectorField::basis(4, 1, FieldElem(2)));

	auto ok = commutation_free({e1, e2});
	EXPECT_TRUE(ok.commutation_free);

	auto bad = commutation_free({e1, e1_doubled});
	EXPECT_FALSE(bad.commutation_free);
	EXPECT_EQ(bad.failing_pair, 1u);

	EXPECT_TRUE(commutation_free({e1}).commutation_free);

	EXPECT_THROW(commutation_free({e1, Series::identity(4)}), Error);
}

TEST(IndependenceSearch, FreePairWitnessAtOne) {
	auto [x, y] = sampled_free_pair(16, 42);
	TupleReport report = independence_search({x, y}, 3, 9);
	ASSERT_TRUE(report.witness_n.has_value());
	EXPECT_EQ(*report.witness_n, 1);
	EXPECT_EQ(report.table.size(), 100u);
	EXPECT_EQ(report.window_lo, 1);
	EXPECT_EQ(report.window_hi, 10);
	EXPECT_EQ(report.order_used, 16u);
}

TEST(IndependenceSearch, SingletonPowersAreNontrivial) {
	auto [x, y] = sampled_free_pair(8, 43);
	TupleReport report = independence_search({x}, 1, 9);
	ASSERT_TRUE(report.witness_n.has_value());
	EXPECT_EQ(*report.witness_n, 1);
	EXPECT_EQ(report.table.size(), 10u);
	// first-coefficient character: X^a has first coefficient a * c1 != 0
	for (const auto &[alphas, idx] : report.table)
		EXPECT_EQ(idx, 1u);
}

TEST(IndependenceSearch, RejectsCommutingTuple) {
	auto [x, y] = sampled_free_pair(8, 44);
	EXPECT_THROW(independence_search({x, x}, 2, 3), Error);
}

TEST(SeparationCheck, IdentityGlueReducesToIndependence) {
	auto [x, y] = sampled_free_pair(12, 45);
	Series id = Series::identity(12);
	TupleReport indep = independence_search({x, y}, 3, 5);
	TupleReport sep = separation_check({x, y}, {id, id, id}, 3, 5);
	ASSERT_TRUE(indep.witness_n.has_value());
	ASSERT_TRUE(sep.witness_n.has_value());
	EXPECT_LE(*sep.witness_n, *indep.witness_n);
}

TEST(SeparationCheck, InterleavedGlue) {
	auto [x, y] = sampled_free_pair(16, 46);
	TupleReport report = separation_check({x, y}, {y, x, y}, 2, 5);
	ASSERT_TRUE(report.witness_n.has_value());
	EXPECT_EQ(report.table.size(), 36u);
}

TEST(SeparationCheck, Errors) {
	auto [x, y] = sampled_free_pair(8, 47);
	Series id = Series::identity(8);
	EXPECT_THROW(separation_check({x, y}, {id, id}, 2, 3), Error);
	// hypothesis fails: with u = (x, x) and identity glue, [x, x] = 1
	EXPECT_THROW(separation_check({x, x}, {id, id, id}, 2, 3), Error);
}

// Enlarging the window or the order never flips a witness to failure.
TEST(BpCheck, MonotonicityOfEvidence) {
	auto [x, y] = sampled_free_pair(16, 48);
	TupleReport small = independence_search({x, y}, 2, 3);
	ASSERT_TRUE(small.witness_n.has_value());

	TupleReport wider = independence_search({x, y}, 2, 6);
	ASSERT_TRUE(wider.witness_n.has_value());
	EXPECT_LE(*wider.witness_n, *small.witness_n);

	auto [x8, y8] = sampled_free_pair(8, 48);
	TupleReport lower = independence_search({truncate(x, 8), truncate(y, 8)}, 2, 3);
	ASSERT_TRUE(lower.witness_n.has_value());
}
