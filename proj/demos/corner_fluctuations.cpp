// Sample the south-east corner entry of a triangular Young tableau with the
// hook walk and watch its rescaled fluctuations approach the product law.

#include <iostream>

#include "perioda/limit_laws.hpp"
#include "perioda/links.hpp"

int main() {
    using namespace perioda;
    set_real_precision(50);

    const std::int64_t l = 1, p = 2;
    GenGammaProdSpec limit = GenGammaProdSpec::young_polya(p, l, p, l);
    double target = gengammaprod_moment(1, limit).convert_to<double>();
    std::cout << "limit mean of the rescaled corner statistic: " << format_float(target) << "\n";

    for (std::int64_t n : {20, 60, 120}) {
        auto ex = corner_statistic_experiment_triangular(l, p, n, 4000, 2024);
        std::cout << "n = " << n << ": empirical mean " << format_float(ex.empirical_moment(1))
                  << " +- " << format_float(ex.empirical_stderr(1)) << "\n";
    }
    return 0;
}
