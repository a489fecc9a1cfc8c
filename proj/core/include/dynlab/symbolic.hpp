#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dynlab/core.hpp"
#include "dynlab/graph.hpp"

namespace dynlab {

using Symbol = std::uint32_t;

/// Vertex shift: bi-infinite walks on a directed graph over a finite alphabet.
/// Always pruned, so every symbol has an incoming and an outgoing edge.
class Sft {
public:
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    std::size_t size() const { return alphabet_.size(); }
    /// Successors of each symbol, ascending.
    const Digraph& graph() const { return graph_; }
    bool allows(Symbol a, Symbol b) const;
    std::size_t edge_count() const;
    /// Allowed two-letter words as symbol-name pairs, in index order.
    std::vector<std::pair<std::string, std::string>> edges() const;

    friend Sft build_sft(std::vector<std::string> alphabet,
                         std::span<const std::pair<std::string, std::string>> edges);
    friend Sft product_system(std::span<const Sft> factors);

private:
    std::vector<std::string> alphabet_;
    Digraph graph_;
};

/// Validates edges against the alphabet and prunes stranded symbols
/// repeatedly. Throws EmptyShift when nothing survives.
Sft build_sft(std::vector<std::string> alphabet,
              std::span<const std::pair<std::string, std::string>> edges);

/// An eventually periodic bi-infinite allowed sequence, as a two-sided lasso
/// over symbol indices.
struct SymbolicPoint {
    Lasso word;
};

/// Checks every seam and cycle wrap of the lasso against the edge set.
SymbolicPoint make_symbolic_point(const Sft& sft, Lasso word);

/// 2^{-k} where k = min{|i| : x_i != y_i}; 0 when provably equal. Comparison
/// stops at |i| = cap; HorizonExceeded when neither a difference nor the
/// periodic structure settles the answer by then.
Rational shift_distance(const SymbolicPoint& x, const SymbolicPoint& y, std::size_t cap = 62);

/// sup over i of d(sigma^i x, sigma^i y), decided exactly from the lassos.
Rational orbit_sup_distance(const SymbolicPoint& x, const SymbolicPoint& y);

/// Every periodic point of the given period (not necessarily prime) as a pure
/// cycle lasso; rotations are distinct points.
std::vector<SymbolicPoint> periodic_points(const Sft& sft, std::size_t period);

/// trace(A^n) for the adjacency matrix A.
std::uint64_t adjacency_trace(const Sft& sft, std::size_t power);

/// Desk-scale truncation: points are the allowed words of length 2w+1, the
/// metric is 2^{-min{|i| <= w : x_i != y_i}}, and the map shifts left and
/// appends the smallest allowed successor symbol. The full successor relation
/// (every allowed extension) is attached to the system.
FiniteSystem window_system(const Sft& sft, std::size_t w);

/// Componentwise product on tuples of symbols.
Sft product_system(std::span<const Sft> factors);

}  // namespace dynlab
