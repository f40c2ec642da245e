#include "qadv/function_spec.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace qadv {

int FunctionSpec::find_input(const std::string& s) const {
  const auto it = std::lower_bound(inputs.begin(), inputs.end(), s);
  if (it == inputs.end() || *it != s) return -1;
  return static_cast<int>(it - inputs.begin());
}

void FunctionSpec::validate() const {
  if (n < 1) fail(ErrorCode::InvariantViolation, "input length must be at least 1");
  if (sigma < 2 || sigma > 10) {
    fail(ErrorCode::InvariantViolation, "alphabet size must be in [2, 10]");
  }
  if (inputs.size() < 2) fail(ErrorCode::InvariantViolation, "need at least two inputs");
  if (inputs.size() != values.size()) {
    fail(ErrorCode::InvariantViolation, "one value required per input");
  }
  for (size_t r = 0; r < inputs.size(); ++r) {
    const std::string& s = inputs[r];
    if (static_cast<int>(s.size()) != n) {
      fail(ErrorCode::InvariantViolation, "input '" + s + "' has wrong length");
    }
    for (char c : s) {
      if (c < '0' || c >= '0' + sigma) {
        fail(ErrorCode::InvariantViolation, "input '" + s + "' has digit outside alphabet");
      }
    }
    if (r > 0 && inputs[r - 1] >= s) {
      fail(ErrorCode::InvariantViolation,
           inputs[r - 1] == s ? "duplicate input '" + s + "'" : "inputs not sorted");
    }
    if (values[r] < 0 || values[r] >= static_cast<int>(outputs.size())) {
      fail(ErrorCode::InvariantViolation, "value index out of range for input '" + s + "'");
    }
  }
  std::vector<bool> seen(outputs.size(), false);
  for (int v : values) seen[v] = true;
  const int distinct = static_cast<int>(std::count(seen.begin(), seen.end(), true));
  if (distinct < 2) {
    fail(ErrorCode::InvariantViolation, "need at least two distinct output values");
  }
}

namespace {

// Sort rows lexicographically by input string, carrying the labels along,
// then intern labels in order of first appearance.
FunctionSpec assemble(int n, int sigma, std::vector<std::pair<std::string, std::string>> rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  FunctionSpec spec;
  spec.n = n;
  spec.sigma = sigma;
  std::map<std::string, int> interned;
  for (auto& [input, label] : rows) {
    auto it = interned.find(label);
    if (it == interned.end()) {
      it = interned.emplace(label, static_cast<int>(spec.outputs.size())).first;
      spec.outputs.push_back(label);
    }
    spec.inputs.push_back(std::move(input));
    spec.values.push_back(it->second);
  }
  spec.validate();
  return spec;
}

}  // namespace

FunctionSpec parse_function(std::istream& in, const std::string& origin) {
  auto parse_fail = [&](int line, const std::string& what) {
    fail(ErrorCode::ParseError, origin + ":" + std::to_string(line) + ": " + what);
  };

  int line_no = 0;
  int n = -1, sigma = -1;
  std::vector<std::pair<std::string, std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;  // blank or comment-only line
    if (n < 0) {
      std::istringstream header(line);
      if (!(header >> n >> sigma) || n < 1 || sigma < 2) {
        parse_fail(line_no, "expected header line 'n sigma'");
      }
      std::string extra;
      if (header >> extra) parse_fail(line_no, "trailing tokens after header");
      continue;
    }
    std::string label;
    if (!(fields >> label)) parse_fail(line_no, "record needs '<digits> <output-label>'");
    std::string extra;
    if (fields >> extra) parse_fail(line_no, "trailing tokens after record");
    if (static_cast<int>(first.size()) != n) {
      parse_fail(line_no, "input '" + first + "' does not have " + std::to_string(n) + " digits");
    }
    for (size_t col = 0; col < first.size(); ++col) {
      if (first[col] < '0' || first[col] >= '0' + sigma) {
        parse_fail(line_no, "column " + std::to_string(col + 1) + ": digit outside alphabet");
      }
    }
    rows.emplace_back(first, label);
  }
  if (n < 0) fail(ErrorCode::ParseError, origin + ": missing header line");
  for (size_t a = 0; a < rows.size(); ++a) {
    for (size_t b = a + 1; b < rows.size(); ++b) {
      if (rows[a].first == rows[b].first) {
        fail(ErrorCode::InvariantViolation, origin + ": duplicate input '" + rows[a].first + "'");
      }
    }
  }
  return assemble(n, sigma, std::move(rows));
}

FunctionSpec load_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
  return parse_function(in, path);
}

namespace {

void append_weight_strings(int n, int weight, std::vector<std::string>& out) {
  if (weight == 0) {
    out.push_back(std::string(n, '0'));
    return;
  }
  std::vector<int> ones(weight);
  std::iota(ones.begin(), ones.end(), 0);
  std::vector<std::string> batch;
  while (true) {
    std::string s(n, '0');
    for (int p : ones) s[p] = '1';
    batch.push_back(std::move(s));
    int k = weight - 1;
    while (k >= 0 && ones[k] == n - weight + k) --k;
    if (k < 0) break;
    ++ones[k];
    for (int j = k + 1; j < weight; ++j) ones[j] = ones[j - 1] + 1;
  }
  std::sort(batch.begin(), batch.end());
  out.insert(out.end(), batch.begin(), batch.end());
}

std::string subset_label(const std::string& x) {
  std::string label = "{";
  bool first = true;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] != '1') continue;
    if (!first) label += ",";
    label += std::to_string(i + 1);
    first = false;
  }
  label += "}";
  return label;
}

}  // namespace

FunctionSpec search_function(int n) {
  if (n < 2) fail(ErrorCode::BadParameters, "search needs n >= 2");
  std::vector<std::pair<std::string, std::string>> rows;
  for (int i = 0; i < n; ++i) {
    std::string x(n, '0');
    x[i] = '1';
    rows.emplace_back(x, std::to_string(i + 1));
  }
  return assemble(n, 2, std::move(rows));
}

FunctionSpec tfold_search_function(int n, int t) {
  if (n < 2 || t < 1 || t > n) fail(ErrorCode::BadParameters, "tfold needs n >= 2, 1 <= t <= n");
  std::vector<std::string> strings;
  append_weight_strings(n, t, strings);
  std::vector<std::pair<std::string, std::string>> rows;
  for (auto& x : strings) rows.emplace_back(x, subset_label(x));
  if (rows.size() < 2) fail(ErrorCode::BadParameters, "tfold domain too small");
  return assemble(n, 2, std::move(rows));
}

FunctionSpec threshold_function(int n, int t) {
  if (n < 2 || t < 1 || t > n) {
    fail(ErrorCode::BadParameters, "threshold needs n >= 2, 1 <= t <= n");
  }
  std::vector<std::pair<std::string, std::string>> rows;
  std::vector<std::string> low, high;
  append_weight_strings(n, t - 1, low);
  append_weight_strings(n, t, high);
  for (auto& x : low) rows.emplace_back(x, "0");
  for (auto& x : high) rows.emplace_back(x, "1");
  return assemble(n, 2, std::move(rows));
}

FunctionSpec or_function(int n) {
  if (n < 2) fail(ErrorCode::BadParameters, "or needs n >= 2");
  return threshold_function(n, 1);
}

FunctionSpec builtin_function(const std::string& family, int n, int t) {
  if (family == "search") return search_function(n);
  if (family == "tfold") return tfold_search_function(n, t);
  if (family == "threshold") return threshold_function(n, t);
  if (family == "or") return or_function(n);
  fail(ErrorCode::BadParameters, "unknown family '" + family + "'");
}

}  // namespace qadv
