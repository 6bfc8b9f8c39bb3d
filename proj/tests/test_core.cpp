#include <doctest.h>

#include "glat/lattice.hpp"
#include "glat/matrix.hpp"
#include "glat/scalar.hpp"

using namespace glat;

TEST_CASE("scalar field axioms over Q(i)") {
  const Scalar I = Scalar::i();
  CHECK(I * I == Scalar(-1));
  CHECK(I.conj() == -I);
  CHECK((Scalar::frac(1, 2) + Scalar::frac(1, 3)) == Scalar::frac(5, 6));
  CHECK(Scalar::frac(2, 4) == Scalar::frac(1, 2));  // canonicalized

  const Scalar z = Scalar::frac(3, 4) + Scalar::frac(-2, 5) * I;
  CHECK(z * z.inverse() == Scalar(1));
  CHECK(z.norm() == z * z.conj());
  CHECK(z.pow(3) == z * z * z);
  CHECK(z.pow(0) == Scalar(1));
  CHECK(z.pow(-2) == (z * z).inverse());
  CHECK((z - z).is_zero());
}

TEST_CASE("scalar predicates") {
  CHECK(Scalar(0).is_zero());
  CHECK(Scalar(1).is_one());
  CHECK(Scalar(-7).is_integer());
  CHECK(Scalar::frac(3, 2).is_rational());
  CHECK(!Scalar::frac(3, 2).is_integer());
  CHECK(!Scalar::i().is_rational());
}

static Scalar sp(const char* txt) {
  const auto v = Scalar::parse(txt);
  REQUIRE(v.has_value());
  return *v;
}

TEST_CASE("scalar text form round trips") {
  for (const char* txt : {"0", "5", "-3", "3/2", "-1/2", "i", "-i", "1+i",
                          "-1/2+2/3i", "2-5/7i", "3i"}) {
    const Scalar v = sp(txt);
    CHECK(sp(v.str().c_str()) == v);
  }
  CHECK(sp("3/2").str() == "3/2");
  CHECK(sp("-1/2+2/3i") == Scalar::frac(-1, 2) + Scalar::frac(2, 3) * Scalar::i());
  CHECK(sp("i") == Scalar::i());
  CHECK(sp("-i") == -Scalar::i());
  CHECK(!Scalar::parse("1//2").has_value());
  CHECK(!Scalar::parse("").has_value());
}

TEST_CASE("scalar ordering and floor") {
  CHECK(Scalar::frac(-3, 2).cmp(Scalar(-1)) < 0);
  CHECK(Scalar(2).cmp(Scalar::frac(3, 2)) > 0);
  CHECK(Scalar(1).cmp(Scalar(1)) == 0);
  CHECK(Scalar::frac(-3, 2).floor_re() == -2);
  CHECK(Scalar::frac(3, 2).floor_re() == 1);
  CHECK(Scalar(4).floor_re() == 4);
}

TEST_CASE("symplectic form on parameter pairs") {
  CHECK(symplectic_form(CPair{Scalar(1), Scalar(1)}, CPair{Scalar(2), Scalar(1)}) ==
        Scalar(1));
  CHECK(symplectic_form(CPair{Scalar(0), Scalar(1)}, CPair{Scalar(1), Scalar(0)}) ==
        Scalar(1));
  // antisymmetry
  const CPair u{Scalar::frac(2, 3), Scalar::i()};
  const CPair v{Scalar(5), Scalar::frac(-1, 7)};
  CHECK(symplectic_form(u, v) == -symplectic_form(v, u));
  CHECK(symplectic_form(u, u).is_zero());
}

TEST_CASE("canonical representatives modulo the grading moduli") {
  const std::vector<long> mods{3, 0};
  CHECK(canon(Pt{Int(7), Int(-5)}, mods) == Pt{Int(1), Int(-5)});
  CHECK(canon(Pt{Int(-1), Int(2)}, mods) == Pt{Int(2), Int(2)});
  CHECK(canon(Pt{Int(0), Int(0)}, mods) == pt_zero(2));
}

TEST_CASE("box enumeration is lexicographic and complete") {
  const Box b{2, 1};
  const auto pts = b.points();
  REQUIRE(pts.size() == 9);
  CHECK(pts.front() == Pt{Int(-1), Int(-1)});
  CHECK(pts.back() == Pt{Int(1), Int(1)});
  for (size_t k = 1; k < pts.size(); ++k) CHECK(PtLess{}(pts[k - 1], pts[k]));
  CHECK(b.contains(Pt{Int(1), Int(-1)}));
  CHECK(!b.contains(Pt{Int(2), Int(0)}));
  long seen = 0;
  b.each([&](const Pt&) { ++seen; });
  CHECK(seen == 9);
}

TEST_CASE("additive maps act coordinatewise") {
  AdditiveMap f;
  f.rank = 2;
  f.dim = 1;
  f.gen_images = {{Scalar(2)}, {Scalar::frac(-1, 3)}};
  CHECK(f.apply1(Pt{Int(3), Int(6)}) == Scalar(4));
  CHECK(f.apply(Pt{Int(1), Int(0)}) == Vec{Scalar(2)});
}

TEST_CASE("hermite bases, index, and membership") {
  const auto h = hnf_basis({Pt{Int(2), Int(4)}, Pt{Int(4), Int(2)}}, 2);
  const auto idx = lattice_index(h, 2);
  REQUIRE(idx.has_value());
  CHECK(*idx == 12);
  CHECK(in_lattice(h, Pt{Int(2), Int(4)}));
  CHECK(in_lattice(h, Pt{Int(6), Int(6)}));
  CHECK(!in_lattice(h, Pt{Int(1), Int(0)}));

  // rank-deficient spans have no finite index
  const auto line = hnf_basis({Pt{Int(1), Int(2)}, Pt{Int(2), Int(4)}}, 2);
  CHECK(!lattice_index(line, 2).has_value());
  CHECK(in_lattice(line, Pt{Int(3), Int(6)}));
  CHECK(!in_lattice(line, Pt{Int(0), Int(1)}));
}

TEST_CASE("primitive completion and primitivization") {
  const auto rows = complete_primitive(Pt{Int(2), Int(3)});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == Pt{Int(2), Int(3)});
  const Int det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
  CHECK((det == 1 || det == -1));

  CHECK(make_primitive(Pt{Int(4), Int(-6)}) == Pt{Int(2), Int(-3)});
  CHECK(make_primitive(Pt{Int(0), Int(-5)}) == Pt{Int(0), Int(-1)});
}

static ExactMatrix mk(int r, int c, std::vector<long> v) {
  ExactMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = Scalar(v[(size_t)(i * c + j)]);
  return m;
}

TEST_CASE("exact rank, nullspace, and solve") {
  CHECK(rank(mk(2, 2, {1, 2, 2, 4})) == 1);
  CHECK(rank(mk(2, 2, {1, 2, 3, 4})) == 2);

  const auto ns = nullspace(mk(2, 2, {2, 1, 4, 2}));
  REQUIRE(ns.size() == 1);
  CHECK(ns[0][0] == Scalar(1));  // first nonzero normalized to 1
  CHECK(ns[0][1] == Scalar(-2));

  const auto sol = solve(mk(2, 2, {1, 1, 0, 1}), Vec{Scalar(3), Scalar(1)});
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] == Scalar(2));
  CHECK((*sol)[1] == Scalar(1));
  CHECK(!solve(mk(2, 1, {1, 2}), Vec{Scalar(1), Scalar(1)}).has_value());

  // underdetermined: free variables pinned to zero
  const auto under = solve(mk(1, 2, {1, 1}), Vec{Scalar(5)});
  REQUIRE(under.has_value());
  CHECK((*under)[0] == Scalar(5));
  CHECK((*under)[1] == Scalar(0));
}

TEST_CASE("incremental echelon span") {
  Echelon e(3);
  CHECK(e.insert({Scalar(1), Scalar(2), Scalar(0)}));
  CHECK(e.insert({Scalar(0), Scalar(0), Scalar(3)}));
  CHECK(!e.insert({Scalar(2), Scalar(4), Scalar(3)}));  // dependent
  CHECK(e.rank() == 2);
  CHECK(e.contains({Scalar(1), Scalar(2), Scalar(1)}));
  CHECK(!e.contains({Scalar(0), Scalar(1), Scalar(0)}));
  CHECK(e.reduce({Scalar(1), Scalar(2), Scalar(3)}).at(0).is_zero());
  CHECK(e.free_cols() == std::vector<int>{1});
}
