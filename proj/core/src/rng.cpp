// Rng is header-only; this translation unit just anchors the target.
#include "sos/common/rng.hpp"
