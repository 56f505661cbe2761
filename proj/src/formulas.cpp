#include "gcat/zoo_formulas.hpp"

extern "C" {
#include <quadmath.h>
}

namespace gcat::zoo::formulas {

std::array<Quad, 2> sin_cos(const Quad& x) {
    __float128 s, c;
    sincosq(x.backend().value(), &s, &c);
    return {Quad(s), Quad(c)};
}

std::array<Quad, 2> sinh_cosh(const Quad& x) {
    const __float128 e = expq(x.backend().value());
    const __float128 ie = 1 / e;
    return {Quad((e - ie) / 2), Quad((e + ie) / 2)};
}

}  // namespace gcat::zoo::formulas
