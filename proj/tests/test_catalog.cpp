#include <doctest.h>

#include <vector>

#include "glat/catalog.hpp"
#include "glat/structure.hpp"

using namespace glat;

TEST_CASE("witt brackets and degree-zero row") {
  const auto s = witt();
  CHECK(s.cc(Pt{Int(2)}, Pt{Int(-3)}) == Scalar(-5));
  CHECK(s.l(Pt{Int(7)}) == Scalar(7));
  CHECK(s.cc(Pt{Int(1)}, Pt{Int(1)}).is_zero());
}

TEST_CASE("additive-row structures generalize witt") {
  AdditiveMap id;
  id.rank = 1;
  id.dim = 1;
  id.gen_images = {{Scalar(1)}};
  const auto s = wl(id);
  const auto w = witt();
  for (long a = -4; a <= 4; ++a)
    for (long b = -4; b <= 4; ++b)
      CHECK(s.cc(Pt{Int(a)}, Pt{Int(b)}) == w.cc(Pt{Int(a)}, Pt{Int(b)}));
}

TEST_CASE("parameterized family: bracket values and metadata") {
  const auto s = wpi({CPair{Scalar(1), Scalar(0)}, CPair{Scalar(0), Scalar::i()}}, Field::Qi);
  CHECK(s.rank == 2);
  CHECK(s.param_injective);
  CHECK(s.cond_c);
  CHECK(s.cond_c_exact);
  // [L_a, L_b] with images u = pi(a)+rho, v = pi(b)+rho is <u|v> L_{a+b}
  const Pt a{Int(1), Int(0)}, b{Int(0), Int(1)};
  // pi(a) = (1,0), pi(b) = (0,i): <(2,1)|(1,1+i)> = 1*1 - 2*(1+i) = -1-2i
  CHECK(s.cc(a, b) == Scalar(-1) - Scalar(2) * Scalar::i());
  CHECK(s.l(a) == Scalar(1));               // <(1,1)|(2,1)> = 1*2 - 1*1
  CHECK(s.l(b) == -Scalar::i());            // <(1,1)|(1,1+i)> = 1 - (1+i)
}

TEST_CASE("parameterized family: degeneracy flags") {
  CHECK(!wpi({CPair{Scalar(1), Scalar(1)}}).cond_c);  // image inside the diagonal
  const auto hit = wpi({CPair{Scalar(2), Scalar(0)}, CPair{Scalar(0), Scalar(2)}});
  CHECK(!hit.cond_c);  // (2,2) lies in the parameter lattice
  CHECK(hit.param_injective);
  const auto thin = wpi({CPair{Scalar(1), Scalar(0)}, CPair{Scalar(2), Scalar(0)}});
  CHECK(!thin.param_injective);
}

TEST_CASE("integrable rank-1 structure of type 1") {
  const auto s = a1_1();
  for (long n = -4; n <= 4; ++n) {
    const long r = ((n % 3) + 3) % 3;
    const Scalar expect = r == 1 ? Scalar(2) : (r == 2 ? Scalar(-2) : Scalar(0));
    CHECK(s.l(Pt{Int(n)}) == expect);
  }
  CHECK(s.cc(Pt{Int(1)}, Pt{Int(-1)}) == Scalar(1));
  // brackets respect the support pattern: no component escapes
  for (long a = -5; a <= 5; ++a)
    for (long b = -5; b <= 5; ++b)
      if (!s.cc(Pt{Int(a)}, Pt{Int(b)}).is_zero()) CHECK(s.in_supp(Pt{Int(a + b)}));
}

TEST_CASE("integrable rank-1 structure of type 2") {
  const auto s = a2_2();
  const long expect[8] = {0, 1, -2, -1, 0, 1, 2, -1};
  for (long n = -8; n <= 8; ++n) {
    const long r = ((n % 8) + 8) % 8;
    CHECK(s.l(Pt{Int(n)}) == Scalar(expect[r]));
  }
  CHECK(check_jacobi(s, Box{1, 5}).ok());
}

TEST_CASE("finite quotients carry the same degree-zero row") {
  const auto s3 = sl2_z3();
  CHECK(s3.moduli == std::vector<long>{3});
  CHECK(s3.l(Pt{Int(1)}) == Scalar(2));
  CHECK(s3.l(Pt{Int(2)}) == Scalar(-2));
  CHECK(s3.l(pt_zero(1)).is_zero());
  CHECK(check_jacobi(s3, Box{1, 3}).ok());

  const auto s8 = sl3_z8();
  CHECK(s8.moduli == std::vector<long>{8});
  const long expect[8] = {0, 1, -2, -1, 0, 1, 2, -1};
  for (long n = 0; n < 8; ++n) CHECK(s8.l(Pt{Int(n)}) == Scalar(expect[n]));
  CHECK(check_jacobi(s8, Box{1, 4}).ok());
}

TEST_CASE("pullbacks along lattice maps match the infinite models") {
  const auto p3 = pullback({1}, 3, sl2_z3());
  CHECK(p3.moduli == std::vector<long>{0});
  CHECK(p3.name == "pullback(sl2_z3; 1 mod 3)");
  CHECK(diagonal_equivalence(p3, a1_1(), Box{1, 6}).ok);

  const auto p8 = pullback({1}, 8, sl3_z8());
  CHECK(diagonal_equivalence(p8, a2_2(), Box{1, 8}).ok);
}

TEST_CASE("spectator coordinates act trivially") {
  const auto s = imprimitive(witt(), 1);
  CHECK(s.rank == 2);
  CHECK(s.moduli == std::vector<long>({0, 0}));
  CHECK(s.cc(Pt{Int(2), Int(5)}, Pt{Int(-3), Int(1)}) ==
        witt().cc(Pt{Int(2)}, Pt{Int(-3)}));
  CHECK(s.l(Pt{Int(0), Int(9)}).is_zero());
  CHECK(check_jacobi(s, Box{2, 2}).ok());
}
