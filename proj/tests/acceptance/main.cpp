#include <cstdlib>
#include <iostream>
#include <string>

#include "acceptance/criteria.hpp"

int main(int argc, char** argv) {
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    int failed = 0;
    for (const auto& c : acceptance::criteria()) {
        if (only && c.id != only) continue;
        auto o = acceptance::run(c);
        std::cout << acceptance::summary_line(o) << std::endl;
        if (!o.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
