#pragma once

#include <vector>

#include "dualitylab/expfam.hpp"

namespace dualitylab {

/// Which side of the reference point the embedded lattice lives on. The
/// divergence blows up toward both ends of the domain, so each energy level
/// has one solution on each side.
enum class Branch { below_reference, above_reference };

struct LatticePoint {
    int k;
    double theta;
    double energy;  // k^n
};

struct LatticeEmbedding {
    double n;
    double theta0;
    double theta1;  // the k = 1 entry (unit normalization D(theta1||theta0) = 1)
    Branch branch;
    std::vector<LatticePoint> points;
};

struct GapEntry {
    int k;
    double gap;  // Riemannian distance between theta_k and theta_{k+1}
};

struct GapTable {
    double n;
    double theta0;
    std::vector<GapEntry> entries;
};

struct ClosureReport {
    double n;
    int A, B, C;
    double energy_sum;      // A^n + B^n
    double target_energy;   // C^n
    double defect;          // A^n + B^n - C^n
    double theta_R_energy;  // product divergence D(R||O) of the hypotenuse
    double theta_C;
    bool closed;
};

/// theta_A with D(theta_A || theta0) = A^n on the requested branch,
/// |D - A^n| <= tol.
double embed_integer(double n, double theta0, int A, Branch branch,
                     double tol = 1e-10);

LatticeEmbedding build_lattice(double n, double theta0, int K, Branch branch,
                               double tol = 1e-10);

/// (1/sqrt(n)) |ln(theta_b / theta_a)|, the metric length of the segment.
double riemannian_gap(double n, double theta_a, double theta_b);

GapTable gap_table(const LatticeEmbedding& emb);

/// Embed A and B on orthogonal axes, check the hypotenuse energy against the
/// lattice point of C, and report the closure defect A^n + B^n - C^n.
ClosureReport pythagoras_closure(double n, double theta0, int A, int B, int C,
                                 double tol = 1e-6);

}  // namespace dualitylab
