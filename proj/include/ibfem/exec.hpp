#pragma once

namespace ibfem {

// Execution policy for the hot kernels. Both paths produce bit-identical
// results: parallel loops only fill disjoint per-element / per-row slots,
// all reductions run serially in a fixed order afterwards.
enum class Exec { serial, parallel };

}  // namespace ibfem
