#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mlne {

// Dense identifiers. Scoped enums give type safety with zero overhead and
// keep ordering/hashing usable in the standard algorithms.
enum class NodeId : std::uint32_t {};
enum class LayerId : std::uint32_t {};

constexpr std::size_t index(NodeId n) noexcept { return static_cast<std::size_t>(n); }
constexpr std::size_t index(LayerId l) noexcept { return static_cast<std::size_t>(l); }
constexpr NodeId node(std::size_t i) noexcept { return NodeId{static_cast<std::uint32_t>(i)}; }
constexpr LayerId layer(std::size_t i) noexcept { return LayerId{static_cast<std::uint32_t>(i)}; }

/// Unordered node pair stored canonically with a < b.
struct NodePair {
  NodeId a{};
  NodeId b{};

  static constexpr NodePair canonical(NodeId x, NodeId y) noexcept {
    return x < y ? NodePair{x, y} : NodePair{y, x};
  }
  friend constexpr auto operator<=>(const NodePair&, const NodePair&) = default;
};

/// One layer-edge (x, y, l).
struct EdgeTriple {
  NodeId x{};
  NodeId y{};
  LayerId layer{};
  friend constexpr auto operator<=>(const EdgeTriple&, const EdgeTriple&) = default;
};

enum class Execution { serial, parallel };

// Error hierarchy. Everything derives from mlne::Error so callers can catch
// library failures in one place; the CLI maps categories to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-provided configuration (bad flag values, violated invariants).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class InvalidLayerError : public Error {
 public:
  using Error::Error;
};

class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

class MismatchError : public Error {
 public:
  using Error::Error;
};

class DegenerateSplitError : public Error {
 public:
  using Error::Error;
};

class InsufficientCandidatesError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A name referenced by a secondary file (e.g. labels) is missing from the name table.
class ReferenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace mlne
