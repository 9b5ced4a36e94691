// Enumerate the histories of a periodic urn, print the exact state
// distribution at a few times, and compare the rescaled mean with its limit.

#include <iostream>

#include "perioda/enumeration.hpp"
#include "perioda/limit_laws.hpp"
#include "perioda/urn.hpp"

int main() {
    using namespace perioda;
    set_real_precision(50);

    UrnSpec spec = validate_spec(UrnSpec::young_polya(2, 1, 1, 1));
    std::cout << "history counts h_0..h_10:";
    for (const auto& h : history_sequence(spec, 10)) std::cout << " " << h.str();
    std::cout << "\n\n";

    auto dist = exact_distribution(spec, 6);
    std::cout << "exact distribution at n = 6 (black -> weight):\n";
    for (const auto& [b, w] : dist.weights)
        std::cout << "  " << b << " -> " << w.str() << "  (p = "
                  << format_float(to_real(Rational(w, dist.total))) << ")\n";

    GenGammaProdSpec law = GenGammaProdSpec::from_urn(spec);
    std::cout << "\nrescaled mean vs the product-law limit:\n";
    for (std::int64_t n : {100, 1000, 10000}) {
        Real mean = to_real(exact_factorial_moment(spec, 1, n));
        Real rescaled = mean * pow(Real(2), Real(2) / 3) / 3 / pow(Real(n), Real(2) / 3);
        std::cout << "  n = " << n << ": " << rescaled.str(12)
                  << "  (limit " << gengammaprod_moment(1, law).str(12) << ")\n";
    }
    return 0;
}
