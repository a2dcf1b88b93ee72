#include "brp/chargroup.hpp"

namespace brp {

template class TruncatedFunctional<Rational>;
template class TruncatedFunctional<double>;
template FunctionalQ group_mul(const FunctionalQ&, const FunctionalQ&);
template FunctionalQ group_inv(const FunctionalQ&);
template FunctionalQ gl_compose(const FunctionalQ&, const FunctionalQ&);

}  // namespace brp
