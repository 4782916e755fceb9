#ifndef QRUMIN_FRAME_FORMULAS_HPP
#define QRUMIN_FRAME_FORMULAS_HPP

#include "qrumin/pqform.hpp"

namespace qrumin {

// Frame-formula evaluations of the bigraded differentials, kept as an
// independent computational path against the projection-based operators.
PqSum db_frame(const PqForm& w);
PqSum dbbar_frame(const PqForm& w);
PqSum d0_frame(const PqForm& w);

}  // namespace qrumin

#endif
