#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "plskel/plspaces.hpp"
#include "plskel/sexpr.hpp"
#include "plskel/valuations.hpp"

namespace plskel {

struct IntMatrix {
  std::vector<std::vector<long>> rows;
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

struct ParamList {
  std::vector<ParamExp> values;
  friend bool operator==(const ParamList&, const ParamList&) = default;
};

struct ActionObject {
  Formula space;
  std::vector<PLMap> generators;
  GroupAction action;
};

using Object = std::variant<Formula, PLMap, ActionObject, LaurentPoly, GenPoint, IntMatrix, ParamList>;

struct Definition {
  std::string name;
  Object value;
};

struct Session {
  RegistryPtr registry;
  std::size_t dim = 0;
  Limits limits;
  std::vector<Definition> definitions;

  Context context() const { return Context{registry, limits}; }
  const Object& lookup(const std::string& name) const;  // UnknownName
};

// Registry and dim declarations must precede the definitions that use them.
// Throws SyntaxError, or Error(ValidationError) wrapping the underlying cause;
// resource exhaustion during validation stays ResourceCap.
Session parse_session(std::string_view text, const Limits& limits = {});

std::string render(const Session& s);
std::string render(const Registry& reg, const Object& o);
std::string render(const Registry& reg, const Formula& f);
std::string render(const Registry& reg, const Definable& d);
std::string render(const Registry& reg, const GenScalar& x);
std::string render(const Registry& reg, const GenPoint& p);

// Definition-by-definition semantic equality (Definable equivalence for
// formulas, agreement for maps).
bool same_session(const Session& a, const Session& b);

struct RunOptions {
  long probe_degree = 2;
};

struct Report {
  std::string command;
  std::string result;
  long long wall_time_us = 0;
  Counters counters;

  std::string render() const;
};

// command: "<op> <name> <arg>..."; throws UnknownCommand, UnknownName and
// module errors.
Report run(const Session& s, const std::string& command, const RunOptions& options = {});

}  // namespace plskel
