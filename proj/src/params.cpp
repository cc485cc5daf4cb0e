#include "collapse/params.hpp"

namespace collapse {

CanonicalPoints canonical_points() {
    // Ghirardi-Rimini-Weber: lambda = 1e-16 /s at r_c = 1e-7 m.
    // Adler: lambda = 1e-8 /s at r_c = 1e-7 m and lambda = 1e-6 /s at r_c = 1e-6 m.
    return CanonicalPoints{
        CollapseParams(1e-16, 1e-7),
        CollapseParams(1e-8, 1e-7),
        CollapseParams(1e-6, 1e-6),
    };
}

}  // namespace collapse
