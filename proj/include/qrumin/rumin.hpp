#ifndef QRUMIN_RUMIN_HPP
#define QRUMIN_RUMIN_HPP

#include "qrumin/pqform.hpp"

namespace qrumin {

// Gamma operator of the retraction machinery: solves the wedge equations
//   theta ^ w ^ dtheta^{3-k} = theta ^ xi ^ dtheta^{4-k}   (k <= 2)
//   theta ^ w = theta ^ xi ^ dtheta^{k-2}                  (k >= 3)
// and returns theta ^ xi resp. theta ^ xi ^ dtheta^{k-3}.
CoordForm gamma(const StructPtr& S, const CoordForm& w);

// pi w := w - d Gamma w - Gamma d w, the projection onto realize(R^k).
CoordForm pi_project(const StructPtr& S, const CoordForm& w);

// All bigraded components of d at once (exterior derivative + decompose).
PqSum d_split(const PqForm& w);
PqSum d_op(const PqForm& w);
PqSum d_op(const PqSum& w);

// Individual differentials per the arrows of the bigraded complex.  Results
// are empty sums when no arrow leaves (p,q); d0 throws off mid-degree.
PqSum db(const PqForm& w);
PqSum dbbar(const PqForm& w);
PqSum d0(const PqForm& w);
PqSum db(const PqSum& w);
PqSum dbbar(const PqSum& w);

// Hodge star, an involution pairing (p,q) with (3-q,2-p).
PqForm hodge(const PqForm& w);
PqSum hodge(const PqSum& w);

// Adjoints d_b^* = (-1)^{p+q} * dbbar *, dbbar^* = (-1)^{p+q} * d_b *;
// low-regime production uses the divergence frame formulas.
PqSum db_adj(const PqForm& w);
PqSum dbbar_adj(const PqForm& w);
PqSum db_adj_star(const PqForm& w);
PqSum dbbar_adj_star(const PqForm& w);

// Kohn Laplacian on p+q <= 2.
PqForm kohn_laplacian(const PqForm& w);

// J = i^{q-p} (low) / i^{q-p+1} (high) and d_b^c.
PqForm J_op(const PqForm& w);
PqForm J_inv(const PqForm& w);
PqSum J_op(const PqSum& w);
PqSum J_inv(const PqSum& w);
PqSum dbc(const PqForm& w);
PqSum dbc(const PqSum& w);

// Products: rwedge = pi(realize ^ realize) split into components; krwedge
// projects onto bidegree (p+r, q+s).
PqSum rwedge(const PqForm& a, const PqForm& b);
PqSum rwedge(const PqSum& a, const PqSum& b);
PqForm krwedge(const PqForm& a, const PqForm& b);

// Closed-form fast paths for the products the operators need.
PqSum rwedge_11_11(const PqForm& a, const PqForm& b);
PqSum rwedge_11_01(const PqForm& a, const PqForm& b);

}  // namespace qrumin

#endif
