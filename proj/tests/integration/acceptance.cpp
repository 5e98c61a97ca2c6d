#include <exception>
#include <iostream>
#include <string>

#include "ghzmux/experiment/self_test.hpp"

// Usage: ghzmux_acceptance [filter]
int
main(int argc, char** argv)
{
    const std::string filter = argc > 1 ? argv[1] : "";
    try {
        const auto results = ghzmux::experiment::run_self_test({}, filter, std::cout);
        int        failed  = 0;
        for (const auto& r : results)
            failed += !r.passed();
        return failed ? 1 : 0;
    } catch (const std::exception& e) {
        std::cerr << "acceptance: " << e.what() << "\n";
        return 2;
    }
}
