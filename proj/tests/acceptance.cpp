#include <iostream>

#include "skewgreen/verify.hpp"

int main() {
    const bool ok = skewgreen::verify::run_suite(std::cout);
    std::cout << (ok ? "acceptance: all criteria passed" : "acceptance: FAILURES") << '\n';
    return ok ? 0 : 1;
}
