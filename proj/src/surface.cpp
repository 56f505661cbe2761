#include "gcat/surface.hpp"

namespace gcat {

bool Axis::contains(double x) const {
    if (!std::isfinite(x)) return false;
    if (periodic) return true;
    if (open_lo ? !(x > lo) : !(x >= lo)) return false;
    if (open_hi ? !(x < hi) : !(x <= hi)) return false;
    return true;
}

}  // namespace gcat
