#ifndef QRUMIN_QOPS_HPP
#define QRUMIN_QOPS_HPP

#include "qrumin/rumin.hpp"

namespace qrumin {

// Second-order operator D = star(db db* + dbbar dbbar* + P wedge) on (1,1).
PqForm op_D(const PqForm& w);        // definition path, lands in (2,1)
PqForm op_D_frame(const PqForm& w);  // divergence display

// Fourth-order operator scriptD = star db*(db db* + dbbar dbbar* + P wedge)
// + 2 lee krwedge, mapping (1,1) -> (2,2).
PqForm op_scriptD(const PqForm& w);
PqForm op_scriptD_frame(const PqForm& w);
PqForm op_scriptD_via_D(const PqForm& w);  // dbbar(D w) + 2 lee krwedge w
PqForm op_scriptDbar(const PqForm& w);     // conj o scriptD o conj, lands in (3,1)

// Q-curvature operator on (1,1)-forms and relatives.
PqSum Q11d(const PqForm& w);      // -i scriptDbar + i scriptD
PqSum R11d(const PqForm& w);      // scriptDbar + scriptD
PqSum R11d_alt(const PqForm& w);  // d star(...) + 2 lee rwedge
PqSum L11bc(const PqForm& w);     // d d0

// Q-curvature operator on (0,1)-forms and the GJMS operator.
PqForm Q01(const PqForm& rho);  // scriptD db rho - db(rho krwedge lee)
PqForm L01(const PqForm& rho);  // i db dbbar db

// Scalar operators, (0,0) -> (3,2).
PqForm L00scal(const StructPtr& S, const Scalar& f);      // i d Q11d db dbbar
PqForm L00scal_alt(const StructPtr& S, const Scalar& f);  // -2 db Q01 dbbar
PqForm Q00scal(const StructPtr& S);                       // d Q11d lee

// Fefferman-Hirachi scalar Q-curvature from the explicit trace-free Schouten
// frame formula; equals 8 * star(Q00scal).
Scalar QFH_frame(const StructPtr& S);
// Same scalar written as a single divergence with explicit torsion terms.
Scalar QFH_frame_divergence(const StructPtr& S);

// The same abstract form re-expressed in another structure's primary parts.
PqForm transport(const PqForm& w, const StructPtr& to);

}  // namespace qrumin

#endif
