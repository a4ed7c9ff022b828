#include "portnet/diagnostic.hpp"

#include <sstream>
#include <utility>

namespace portnet {

std::string to_string(const Diagnostic& d) {
  std::ostringstream os;
  os << '[' << d.code << ']';
  if (d.line > 0) {
    os << " line " << d.line;
    if (d.column > 0) os << ':' << d.column;
  }
  if (!d.nodes.empty()) {
    os << " at ";
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
      if (i) os << ", ";
      os << d.nodes[i];
    }
  }
  os << ": " << d.message;
  if (!d.hint.empty()) os << " (hint: " << d.hint << ')';
  return os.str();
}

Error::Error(std::string code, const std::string& message)
    : std::runtime_error(message), code_(std::move(code)) {}

namespace {
std::string summarize(const std::string& summary, const std::vector<Diagnostic>& ds) {
  std::string out = summary;
  for (const auto& d : ds) {
    out += "\n  ";
    out += to_string(d);
  }
  return out;
}
}  // namespace

DiagnosticError::DiagnosticError(std::string code, const std::string& summary,
                                 std::vector<Diagnostic> diagnostics)
    : Error(std::move(code), summarize(summary, diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

}  // namespace portnet
