#pragma once

namespace ibfem {

// full command-line front end; returns the process exit code
// 0 success, 1 config/capability, 2 geometry, 3 solver, 4 rate window failed
int cli_main(int argc, const char* const* argv);

}  // namespace ibfem
