#include "util.hpp"

#include <gtest/gtest.h>

using namespace fpsg;
using testutil::Rng;

namespace {

Chain base_chain(std::size_t order) {
	return Chain::one_param_base(order, VectorField::basis(order, 1), "X");
}

Chain free_pair(std::size_t order) {
	return base_chain(order).free_product_step({{"Y", Word::letter("X")}});
}

} // namespace

TEST(Chain, OneParamBase) {
	Chain chain = base_chain(6);
	EXPECT_EQ(chain.generators().size(), 1u);
	EXPECT_EQ(chain.steps().size(), 1u);
	// X = exp(e_1) = [1, 1, ...]
	for (std::size_t i = 1; i <= 6; ++i)
		EXPECT_EQ(chain.generator("X").coeff(i), FieldElem(1));

	EXPECT_THROW(Chain::one_param_base(6, VectorField::zero(6), "X"), Error);

	// flows of the base commute with it, symbolically
	SymbolRegistry reg;
	FieldElem lambda = FieldElem::var(reg.fresh());
	Series x = chain.generator("X");
	EXPECT_TRUE(commutator(flow(x, lambda), x).is_identity());
}

TEST(Chain, FreeProductStep) {
	Chain chain = free_pair(6);
	EXPECT_EQ(chain.generators().size(), 2u);
	EXPECT_EQ(chain.registry().size(), 2u); // consumed s, t

	const Series &x = chain.generator("X");
	const Series &y = chain.generator("Y");
	// conjugation preserves the first coefficient
	EXPECT_EQ(y.coeff(1), x.coeff(1));
	// Y != X symbolically: some coefficient differs as a polynomial in s, t
	bool differs = false;
	for (std::size_t i = 1; i <= 6; ++i)
		differs = differs || !(y.coeff(i) - x.coeff(i)).is_zero();
	EXPECT_TRUE(differs);

	EXPECT_THROW(chain.free_product_step({{"Y", Word::letter("X")}}), Error);
	EXPECT_THROW(chain.free_product_step({{"Z", Word::parse("X X^-1")}}), Error);
	EXPECT_THROW(chain.free_product_step({}), Error);
	EXPECT_THROW(Chain().free_product_step({{"Z", Word::letter("X")}}), Error);
}

// The first nonzero coefficient of [X, Y] sits at index 4: log Y has no
// e_2 component (the bracket of s e_1 + s^2 e_2 with e_1 lands at e_3 and
// above), so the leading bracket coefficient at index 3 vanishes.
TEST(Chain, FreeProductCommutatorNontrivial) {
	Chain chain = free_pair(8);
	Certificate cert = nontrivial_certificate(chain, Word::parse("[X,Y]"), 8,
	                                          CertMode::Symbolic);
	EXPECT_TRUE(cert.nontrivial());
	ASSERT_TRUE(cert.witness_index.has_value());
	EXPECT_EQ(*cert.witness_index, 4u);
}

TEST(Chain, AmalgamStep) {
	Chain chain = free_pair(8);
	Word u = Word::parse("[X,Y]");
	Chain amal = chain.amalgam_step(
	    {{"X'", Word::letter("X")}, {"Y'", Word::letter("Y")}}, u);
	EXPECT_EQ(amal.generators().size(), 4u);
	EXPECT_EQ(amal.registry().size(), 3u);

	// the amalgam identification fixes u: evaluated [X', Y'] equals [X, Y]
	EXPECT_EQ(amal.eval_word(Word::parse("[X',Y']")), amal.eval_word(u));
	// the defining relator of the doubled group maps to the identity exactly
	EXPECT_TRUE(amal.eval_word(Word::parse("[X,Y][Y',X']")).is_identity());

	// X' differs from X, with a witness coefficient polynomial in the fresh
	// amalgam symbol
	Certificate cert = nontrivial_certificate(amal, Word::parse("X' X^-1"), 8,
	                                          CertMode::Symbolic);
	EXPECT_TRUE(cert.nontrivial());
	SymbolId amalgam_symbol = amal.steps().back().symbols.at(0);
	std::set<SymbolId> witness_syms;
	cert.witness_coeff->collect_symbols(witness_syms);
	EXPECT_TRUE(witness_syms.contains(amalgam_symbol));

	EXPECT_THROW(chain.amalgam_step({{"X'", Word::letter("X")}}, Word::parse("X X^-1")),
	             Error);
}

TEST(Chain, CentralizerExtensionStep) {
	Chain chain = free_pair(8);
	Chain ext = chain.centralizer_extension_step(Word::letter("X"), "T");
	const Series &t = ext.generator("T");
	const Series &x = ext.generator("X");

	EXPECT_TRUE(commutator(t, x).is_identity());
	EXPECT_TRUE(commutator(t, power(x, 7)).is_identity());
	SymbolRegistry reg = ext.registry();
	FieldElem lambda = FieldElem::var(reg.fresh());
	EXPECT_TRUE(commutator(t, flow(x, lambda)).is_identity());

	// T escapes the old coefficient ring: some coefficient has positive
	// degree in the fresh symbol
	SymbolId fresh = ext.steps().back().symbols.at(0);
	bool has_fresh = false;
	for (std::size_t i = 1; i <= 8; ++i) {
		std::set<SymbolId> syms;
		t.coeff(i).collect_symbols(syms);
		has_fresh = has_fresh || syms.contains(fresh);
	}
	EXPECT_TRUE(has_fresh);

	// old generators unchanged
	EXPECT_EQ(ext.generator("X"), chain.generator("X"));
	EXPECT_EQ(ext.generator("Y"), chain.generator("Y"));

	EXPECT_THROW(chain.centralizer_extension_step(Word::parse("1"), "T"), Error);
}

TEST(Chain, EvalWord) {
	Chain chain = free_pair(6);
	EXPECT_TRUE(chain.eval_word(Word()).is_identity());
	EXPECT_EQ(chain.eval_word(Word::letter("X")), chain.generator("X"));
	EXPECT_TRUE(chain.eval_word(Word::parse("X X^-1")).is_identity());
	EXPECT_THROW(chain.eval_word(Word::letter("Z")), Error);

	// homomorphism: eval(w1 w2) = eval(w1) * eval(w2)
	Rng rng(401);
	for (int trial = 0; trial < 10; ++trial) {
		Word w1 = testutil::rand_reduced_word(rng, {"X", "Y"}, 3);
		Word w2 = testutil::rand_reduced_word(rng, {"X", "Y"}, 3);
		EXPECT_EQ(chain.eval_word(w1 * w2),
		          compose(chain.eval_word(w1), chain.eval_word(w2)));
	}
}

TEST(Chain, SurfaceGroupGenus2) {
	Chain chain = Chain::surface_group(1, 8);
	EXPECT_EQ(chain.generators().size(), 4u);
	for (const char *name : {"A", "B", "A'", "B'"})
		EXPECT_TRUE(chain.has_generator(name));

	EXPECT_TRUE(chain.eval_word(Word::parse("[A,B][B',A']")).is_identity());

	EXPECT_TRUE(nontrivial_certificate(chain, Word::parse("[A,B]"), 8,
	                                   CertMode::Symbolic)
	                .nontrivial());
	EXPECT_TRUE(nontrivial_certificate(chain, Word::parse("[A,A']"), 8,
	                                   CertMode::Symbolic)
	                .nontrivial());
}

TEST(Chain, SurfaceGroupGenus4Names) {
	Chain chain = Chain::surface_group(2, 8);
	EXPECT_EQ(chain.generators().size(), 8u);
	EXPECT_EQ(chain.registry().size(), 7u); // 3 free steps (s, t each) + 1 amalgam
	for (const char *name : {"A1", "B1", "A2", "B2", "A1'", "B1'", "A2'", "B2'"})
		EXPECT_TRUE(chain.has_generator(name));
	EXPECT_TRUE(chain.eval_word(Word::parse("[A1,B1][A2,B2] [B2',A2'][B1',A1']"))
	                .is_identity());
	EXPECT_TRUE(nontrivial_certificate(chain, Word::parse("[A1,A2']"), 16,
	                                   CertMode::Sampled, 9)
	                .nontrivial());
}

TEST(Chain, OrderOneChain) {
	Chain chain = Chain::one_param_base(1, VectorField::basis(1, 1), "X");
	Certificate cert =
	    nontrivial_certificate(chain, Word::letter("X"), 4, CertMode::Symbolic);
	ASSERT_TRUE(cert.nontrivial());
	EXPECT_EQ(*cert.witness_index, 1u);
	// the whole one-parameter subgroup is abelian at every order
	Certificate comm = nontrivial_certificate(chain, Word::parse("[X,X]"), 8,
	                                          CertMode::Symbolic);
	EXPECT_FALSE(comm.nontrivial());
}

TEST(Chain, ReplayDeterminism) {
	Chain chain = Chain::surface_group(1, 6);
	Chain rebuilt = Chain::replay(chain.steps(), 6);
	EXPECT_EQ(to_json(rebuilt), to_json(chain));

	// the whole construction is triangular: rebuilding higher and truncating
	// agrees with rebuilding at the target order
	Chain higher = Chain::replay(chain.steps(), 10);
	EXPECT_EQ(to_json(higher.truncated(6)).at("generators"),
	          to_json(chain).at("generators"));
}

TEST(Chain, ReplayErrors) {
	// base field with a coefficient at e_3 cannot be rebuilt at order 2
	Chain chain = Chain::one_param_base(6, VectorField::basis(6, 3), "X");
	EXPECT_THROW(Chain::replay(chain.steps(), 2), Error);
	EXPECT_EQ(Chain::replay(chain.steps(), 3).order(), 3u);

	// corrupted symbol ids are rejected
	Chain pair = free_pair(4);
	auto steps = pair.steps();
	steps.back().symbols = {5, 6};
	EXPECT_THROW(Chain::replay(steps, 4), Error);

	// the base step must come first and only first
	auto reordered = pair.steps();
	std::swap(reordered[0], reordered[1]);
	EXPECT_THROW(Chain::replay(reordered, 4), Error);
}

TEST(Chain, BaseFieldMustBeConstant) {
	SymbolRegistry reg;
	VectorField a(4);
	a.set_coeff(1, FieldElem::var(reg.fresh()));
	EXPECT_THROW(Chain::one_param_base(4, a, "X"), Error);
	EXPECT_THROW(Chain::one_param_base(3, VectorField::basis(4, 1), "X"), Error);
}

TEST(Chain, SampledReplayMatchesSubstitution) {
	Chain chain = free_pair(6).centralizer_extension_step(Word::letter("X"), "T");
	auto assignment = sample_assignment(7, chain.registry());
	Chain sampled_direct = chain.substituted(assignment);
	Chain sampled_replayed = Chain::replay(chain.steps(), 6, &assignment);
	EXPECT_EQ(to_json(sampled_direct).at("generators"),
	          to_json(sampled_replayed).at("generators"));
}

TEST(Chain, FreeProductInjectivitySlice) {
	Chain chain = free_pair(8);
	std::vector<Word> words;
	for (std::size_t len = 1; len <= 4; ++len)
		testutil::enumerate_reduced_words({"X", "Y"}, len, words);
	for (const auto &w : words) {
		Certificate cert = nontrivial_certificate(chain, w, 16, CertMode::Sampled, 11);
		EXPECT_TRUE(cert.nontrivial()) << w.str();
	}
}
