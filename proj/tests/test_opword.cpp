#include "rglab/opword.hpp"

#include <gtest/gtest.h>

using namespace rglab;

TEST(OperatorWord, NormalFormMovesWLeft) {
    OperatorWord w{Op::H, Op::W, Op::H, Op::W, Op::H};
    EXPECT_EQ(w.w_count(), 2);
    EXPECT_EQ(w.h_count(), 3);
    OperatorWord nf = w.normal_form();
    for (int i = 0; i < 2; ++i) EXPECT_EQ(nf.letters[static_cast<size_t>(i)], Op::W);
    for (int i = 2; i < 5; ++i) EXPECT_EQ(nf.letters[static_cast<size_t>(i)], Op::H);
}

TEST(OperatorWord, LengthCapEnforced) {
    EXPECT_THROW(OperatorWord({Op::H, Op::H, Op::H, Op::H, Op::H, Op::H, Op::H, Op::H, Op::H}),
                 std::invalid_argument);
}

TEST(BilinearForm, RealPartMergesConjugatePairings) {
    BilinearForm f;
    f.add_pairing(Rational(3), 0, 2, 1, 1); // <H^2|A W H>
    f.add_pairing(Rational(-3), 1, 1, 0, 2); // <W H|A H^2>, same bucket under Re
    EXPECT_TRUE(f.is_zero());
}

TEST(BilinearForm, KetWCrossesToBra) {
    BilinearForm a, b;
    a.add_pairing(Rational(1), 2, 1, 1, 0); // <W^2 H|A W>
    b.add_pairing(Rational(1), 3, 0, 0, 1); // <W^3|A H>: same (w=3, {1,0}) bucket
    EXPECT_EQ(a.terms.begin()->first.w_total, 3);
    EXPECT_TRUE(a.terms.begin()->first == b.terms.begin()->first);
}

TEST(Cancellation, ReducesToZeroForm) {
    CancellationReport rep = w_cancellation_reduce();
    EXPECT_TRUE(rep.zero_form);
    EXPECT_TRUE(rep.routes_agree);
    for (int s = 0; s <= 4; ++s) EXPECT_EQ(rep.power_residue[static_cast<size_t>(s)], Rational(0));
}

TEST(Cancellation, HeadlineWFourPattern) {
    CancellationReport rep = w_cancellation_reduce();
    EXPECT_EQ(rep.w4_sequence[0], Rational(1));
    EXPECT_EQ(rep.w4_sequence[1], Rational(-4));
    EXPECT_EQ(rep.w4_sequence[2], Rational(3));
    EXPECT_EQ(rep.w4_sequence[0] + rep.w4_sequence[1] + rep.w4_sequence[2], Rational(0));
}
