#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace latt {

/// Base class for all structural errors raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Cover input is not even a poset: out-of-range index, duplicate pair, or a cycle.
struct InvalidCovers : Error {
    using Error::Error;
};

/// A cover pair is implied by transitivity of the remaining pairs.
struct RedundantEdge : Error {
    int from, to;
    RedundantEdge(int a, int b)
        : Error("redundant cover edge (" + std::to_string(a) + "," + std::to_string(b) +
                ") implied by transitivity"),
          from(a), to(b) {}
};

/// Zero or several minimal/maximal elements.
struct NotBounded : Error {
    using Error::Error;
};

/// Some pair has no meet or no join; carries the offending pair.
struct NotALattice : Error {
    int a, b;
    bool missing_join;
    NotALattice(int a_, int b_, bool join)
        : Error(std::string("pair (") + std::to_string(a_) + "," + std::to_string(b_) +
                ") has no " + (join ? "join" : "meet")),
          a(a_), b(b_), missing_join(join) {}
};

/// The map x -> A(x) is not injective / not order-reflecting; carries a violating pair.
struct NotAtomistic : Error {
    int x, y;
    NotAtomistic(int x_, int y_)
        : Error("elements " + std::to_string(x_) + " and " + std::to_string(y_) +
                " violate the atomistic conditions"),
          x(x_), y(y_) {}
};

struct NotSemimodular : Error {
    using Error::Error;
};

struct NotGeometric : Error {
    using Error::Error;
};

struct NotSublattice : Error {
    using Error::Error;
};

struct NotSubset : Error {
    using Error::Error;
};

/// A join was requested in a family with several minimal upper bounds.
struct JoinUndefined : Error {
    using Error::Error;
};

/// An element of height >= 1 ended up with an empty independent-set family.
struct MalformedFamily : Error {
    using Error::Error;
};

/// A scripted choice is not a legal candidate; message names the failed condition.
struct IllegalChoice : Error {
    using Error::Error;
};

/// remove_atom called on a form that is already at |A(P)| = |J(L)|.
struct AtMinimum : Error {
    using Error::Error;
};

/// Oracle search exceeded its configured cap.
struct CapExceeded : Error {
    using Error::Error;
};

/// Enumeration hit its node budget where a complete answer was required.
struct BudgetExceeded : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

} // namespace latt
