#pragma once

namespace w2b::cli {

/// Entry point shared by the executable and the tests. Returns the exit code.
int run(int argc, char** argv);

}  // namespace w2b::cli
