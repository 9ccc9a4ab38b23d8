#include "core/polarization.hpp"

#include <cmath>
#include <utility>

namespace polcat {

CoherentSuperposition change_basis(const CoherentSuperposition& s, Basis target) {
    if (s.basis() == target) return s;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Cplx i(0.0, 1.0);
    std::vector<CoherentTerm> terms = s.terms();
    for (auto& t : terms) {
        if (target == Basis::Linear) {
            Cplx ap = t.amp[0], am = t.amp[1];
            t.amp[0] = (ap + am) * inv_sqrt2;      // x
            t.amp[1] = i * (ap - am) * inv_sqrt2;  // y
        } else {
            Cplx ax = t.amp[0], ay = t.amp[1];
            t.amp[0] = (ax - i * ay) * inv_sqrt2;  // +
            t.amp[1] = (ax + i * ay) * inv_sqrt2;  // -
        }
    }
    return CoherentSuperposition(target, std::move(terms), s.normalized());
}

}  // namespace polcat
