// Reads NCD model files and prints the alpha/beta report for each, or the
// list of validation problems.
//
//   ncd_report samples/quadratic_n2.json samples/semistable_3fold.json

#include <iostream>

#include "cydegen/cydegen.hpp"

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: " << argv[0] << " MODEL.json...\n";
        return 2;
    }
    int status = 0;
    for (int i = 1; i < argc; ++i) {
        std::cout << argv[i] << ":\n";
        try {
            auto model = cydegen::load_ncd_model(argv[i]);
            if (auto problems = cydegen::validate(model); !problems.empty()) {
                for (const auto& p : problems) std::cout << "  invalid: " << p << '\n';
                status = 2;
                continue;
            }
            auto r = cydegen::theorem_a_report(model);
            std::cout << "  alpha = " << r.alpha << ", beta = " << r.beta << ", weight = " << r.weight << '\n';
        } catch (const cydegen::Error& e) {
            std::cout << "  error: " << e.what() << '\n';
            status = 2;
        }
    }
    return status;
}
