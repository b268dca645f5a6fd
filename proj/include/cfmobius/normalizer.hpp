#pragma once

#include <cfmobius/cf_input.hpp>
#include <cfmobius/matrix.hpp>

#include <string>
#include <vector>

namespace cfm {

// The unimodular maps that leave the tail of every continued fraction intact.
enum class GeneratorKind {
  shear_upper,  // [[1, k], [0, 1]]
  digit,        // [[k, 1], [1, 0]]
  shear_lower,  // [[1, 0], [k, 1]]
  negate_x,     // [[-1, 0], [0, 1]]
  negate_y,     // [[1, 0], [0, -1]]
  swap,         // [[0, 1], [1, 0]]
};

struct SGenerator {
  GeneratorKind kind;
  Int parameter = 0;  // k for the three parametrized shapes, ignored otherwise

  IntMatrix2 matrix() const;
  std::string label() const;  // e.g. "shear_upper(1)", "swap"

  friend bool operator==(const SGenerator&, const SGenerator&) = default;
};

struct Decomposition {
  std::vector<SGenerator> generators;
  IntMatrix2 residual;

  // Product of the generator matrices (identity for an empty list).
  IntMatrix2 generator_product() const;
};

// M = S1 S2 ... Sn * residual with residual = [[a1, b1], [0, d1]] in E2,
// 0 <= b1 < d1. Built by sign normalization of the left column, Euclidean
// elimination below the diagonal, then reduction of b1 modulo |d1|.
Decomposition decompose(const IntMatrix2& m);

struct Absorbed {
  IntMatrix2 matrix;  // M * pi(a0 .. a_j0)
  CFInput tail;       // [a_{j0+1}; a_{j0+2}, ...]
};

// M x == matrix * tail exactly. Throws DomainError unless a_{j0+1} exists.
Absorbed absorb_prefix(const IntMatrix2& m, const CFInput& x, std::size_t j0);

struct Prepared {
  Decomposition decomposition;  // of the absorbed matrix
  IntMatrix2 core;              // decomposition.residual, in E2
  CFInput tail;                 // > 1, every digit >= 1
};

// Absorbs the head of x and decomposes the result, so that
// M x == decomposition.generator_product() * (core * tail).
// Throws DomainError when x is a bare integer [a0].
Prepared prepare(const IntMatrix2& m, const CFInput& x);

}  // namespace cfm
