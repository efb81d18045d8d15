// Runs the acceptance criteria and prints one line per criterion.

#include <cstdio>

#include "glab/acceptance.hpp"

int main() {
    std::setvbuf(stdout, nullptr, _IONBF, 0);
    int failed = 0;
    const auto rows = glab::acceptance::run({}, [&](const glab::acceptance::Result& r) {
        std::printf("%s\n", glab::acceptance::format_row(r).c_str());
        if (!r.pass()) ++failed;
    });
    std::printf("%zu criteria evaluated, %d failed\n", rows.size(), failed);
    return failed == 0 ? 0 : 1;
}
