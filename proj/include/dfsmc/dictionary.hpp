#pragma once

#include "dfsmc/array_model.hpp"
#include "dfsmc/types.hpp"

namespace dfsmc {

// Uniform angular grid in radians, inclusive of the upper end when it lands
// on the lattice: U = floor((hi - lo)/step) + 1 points.
struct Grid {
    RVec points;
    double step = 0.0;

    int size() const { return static_cast<int>(points.size()); }
};

Grid build_grid(double lo, double hi, double step);

// Per-grid-point blocks stacked column-wise: column u of d_stack is the
// N x N matrix Q(zeta_u) flattened column-major, so coupling acts as
// Q(zeta_u) c = C(c) a(zeta_u). xi_stack holds the same pattern built from
// the steering derivative (the first-order Taylor direction in the offset).
struct DictionaryBlocks {
    ArrayGeometry geometry;
    Grid grid;
    CMat d_stack;   // N^2 x U
    CMat xi_stack;  // N^2 x U

    int n() const { return geometry.num_antennas; }
    int u() const { return grid.size(); }
    const cx* d_block(int u_) const { return d_stack.col(u_); }
    const cx* xi_block(int u_) const { return xi_stack.col(u_); }
};

DictionaryBlocks build_dictionary(const Grid& grid, const ArrayGeometry& geom);

// Psi_u(nu) = D_u + nu_u * Xi_u as a dense N x N matrix.
CMat psi_block(const DictionaryBlocks& dict, int u, double nu_u);

// T(nu, c): N x U, column u = Psi_u(nu_u) c.
CMat t_matrix(const DictionaryBlocks& dict, const RVec& nu, const CVec& c);

// P(nu, w): N x N, sum_u w_u Psi_u(nu_u) for one weight column w.
CMat p_matrix(const DictionaryBlocks& dict, const RVec& nu, const CVec& w);

// Offsets live in [-step/2, step/2].
void clamp_offsets(RVec& nu, double step);

}  // namespace dfsmc
