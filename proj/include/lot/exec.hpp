#pragma once

namespace lot {

/// Selects between the OpenMP kernels and their serial reference implementations.
/// Both produce identical results; the serial path exists for testing and benchmarks.
enum class Exec { serial, parallel };

}  // namespace lot
