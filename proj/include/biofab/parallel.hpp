#pragma once

#include <cstddef>

namespace biofab {

/// Execution mode for the data-parallel kernels. Every kernel has a serial
/// path that produces bit-identical results; tests compare the two and the
/// bench target times them.
enum class Exec { serial, parallel };

}  // namespace biofab
