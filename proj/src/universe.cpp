#include "cs/universe.hpp"

#include "cs/error.hpp"

namespace cs {

level universe::rho(ordinal a, ordinal b) const {
    if (a == b) return 0;
    if (a > b) std::swap(a, b);
    for (level k = 0; k <= type().depth(); ++k)
        if (contains(closure(b, k), a)) return k;
    fail(errc::level_too_deep, "rho(" + ordinal_to_string(a) + "," + ordinal_to_string(b) + ") beyond the type depth");
}

}  // namespace cs
