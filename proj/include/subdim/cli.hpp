// Command-line entry point; exit codes: 0 success, 1 usage error,
// 2 data error, 3 numeric failure.
#pragma once

namespace subdim {

int cli_main(int argc, const char* const* argv);

}  // namespace subdim
