#pragma once

// Finite functions f: X -> Sigma_O with X a set of digit strings over
// {0..sigma-1}^n, stored as explicit tables.  Rows are always ordered
// lexicographically so every matrix indexed by X is reproducible.

#include <iosfwd>
#include <string>
#include <vector>

#include "qadv/errors.hpp"

namespace qadv {

struct FunctionSpec {
  int n = 0;                         // input length
  int sigma = 2;                     // input alphabet size
  std::vector<std::string> outputs;  // output alphabet, fixed order
  std::vector<std::string> inputs;   // lexicographically sorted digit strings
  std::vector<int> values;           // values[r] indexes outputs, f(inputs[r])

  int size() const { return static_cast<int>(inputs.size()); }
  int digit(int row, int pos) const { return inputs[row][pos] - '0'; }
  int find_input(const std::string& s) const;  // -1 if absent
  const std::string& output_label(int row) const { return outputs[values[row]]; }
  bool boolean_output() const { return outputs.size() == 2; }

  // Throws InvariantViolation on duplicate/bad-length/bad-digit inputs,
  // out-of-range values, fewer than two inputs or output letters.
  void validate() const;
};

// Truth-table text format: '#' starts a comment, first payload line is
// "n sigma", then one "<digits> <output-label>" record per input.
FunctionSpec load_function(const std::string& path);
FunctionSpec parse_function(std::istream& in, const std::string& origin);

// Built-in families from the standard constructions.
FunctionSpec search_function(int n);                // unique 1 in an n-bit string; output = its position
FunctionSpec tfold_search_function(int n, int t);   // weight-t strings; output = set of positions
FunctionSpec threshold_function(int n, int t);      // weights t-1 and t; output = |x| - t + 1
FunctionSpec or_function(int n);                    // threshold with t = 1

// Dispatch by family name: "search", "tfold", "threshold", "or".
FunctionSpec builtin_function(const std::string& family, int n, int t = 0);

}  // namespace qadv
