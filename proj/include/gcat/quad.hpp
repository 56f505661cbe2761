#pragma once

#include <boost/multiprecision/float128.hpp>

namespace gcat {

// IEEE binary128, used where residual checks need headroom beyond double.
using Quad = boost::multiprecision::float128;

inline double to_double(double x) { return x; }
inline double to_double(const Quad& x) { return x.convert_to<double>(); }

}  // namespace gcat
