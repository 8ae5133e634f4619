#include "ntwfsm/machine_io.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace ntwfsm {
namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

[[noreturn]] void syntax_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": " + what, line);
}

std::size_t parse_index(std::string_view token, std::size_t line, const char* what) {
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || end != token.data() + token.size() || token.empty())
    syntax_error(line, std::string("bad ") + what + " '" + std::string(token) + "'");
  return value;
}

constexpr std::string_view kEpsToken = "<eps>";
constexpr std::string_view kAepsToken = "<aeps>";

LabelElement parse_label(std::string_view token, std::size_t line) {
  if (token == kEpsToken) return LabelElement::epsilon();
  if (token.front() == '?') {
    const auto cls = parse_index(token.substr(1), line, "wildcard class");
    return LabelElement::wildcard(static_cast<VarClass>(cls));
  }
  std::string raw;
  SymbolString literal;
  auto flush = [&] {
    try {
      literal += from_utf8(raw);
    } catch (const Error& e) {
      syntax_error(line, e.what());
    }
    raw.clear();
  };
  for (std::size_t i = 0; i < token.size(); ++i) {
    if (token.substr(i).starts_with(kAepsToken)) {
      flush();
      literal.push_back(kAlignedEpsilon);
      i += kAepsToken.size() - 1;
    } else if (token[i] == '\\') {
      if (++i == token.size()) syntax_error(line, "dangling escape in label");
      switch (token[i]) {
        case 's': raw.push_back(' '); break;
        case 't': raw.push_back('\t'); break;
        case 'n': raw.push_back('\n'); break;
        case 'r': raw.push_back('\r'); break;
        default: raw.push_back(token[i]);
      }
    } else {
      raw.push_back(token[i]);
    }
  }
  flush();
  return LabelElement::lit(std::move(literal));
}

struct Header {
  std::size_t arity = 0;
  std::string semiring;
  std::optional<std::size_t> states;
  bool eps_mode = false;
};

Header parse_header(const std::vector<std::string_view>& tokens, std::size_t line) {
  if (tokens.empty() || tokens[0] != "ntwfsm") syntax_error(line, "expected 'ntwfsm' header");
  Header h;
  bool have_arity = false;
  for (std::size_t k = 1; k < tokens.size(); ++k) {
    const auto tok = tokens[k];
    if (tok == "eps-mode") {
      h.eps_mode = true;
    } else if (tok.starts_with("n=")) {
      h.arity = parse_index(tok.substr(2), line, "arity");
      have_arity = true;
    } else if (tok.starts_with("semiring=")) {
      h.semiring = tok.substr(9);
    } else if (tok.starts_with("states=")) {
      h.states = parse_index(tok.substr(7), line, "state count");
    } else {
      syntax_error(line, "unknown header field '" + std::string(tok) + "'");
    }
  }
  if (!have_arity || h.arity == 0) syntax_error(line, "header needs n=<arity> with arity >= 1");
  if (h.semiring.empty()) syntax_error(line, "header needs semiring=<name>");
  return h;
}

template <Semiring S>
Machine<S> parse_body(const Header& header, const std::vector<std::pair<std::size_t, std::vector<std::string_view>>>& lines) {
  using Weight = typename S::Weight;
  auto weight_of = [](std::string_view token, std::size_t line) {
    auto w = S::parse_weight(token);
    if (!w) syntax_error(line, "bad weight '" + std::string(token) + "' for " + std::string(S::name));
    return *w;
  };

  struct Pending {
    char kind = 't';
    std::size_t line = 0;
    StateId a = 0, b = 0;
    Label label;
    Weight weight{};
  };
  std::vector<Pending> items;
  std::size_t max_state = 0;
  bool any_state = false;
  auto note_state = [&](std::size_t q, std::size_t line) {
    if (header.states && q >= *header.states)
      throw Error(ErrorCode::DanglingState,
                  "line " + std::to_string(line) + ": state " + std::to_string(q) + " exceeds states=" +
                      std::to_string(*header.states),
                  line);
    max_state = any_state ? std::max(max_state, q) : q;
    any_state = true;
    return static_cast<StateId>(q);
  };

  for (const auto& [line, tokens] : lines) {
    const auto kind = tokens[0];
    if (kind == "i" || kind == "f") {
      if (tokens.size() != 3) syntax_error(line, "expected '" + std::string(kind) + " <state> <weight>'");
      Pending p;
      p.kind = kind[0];
      p.line = line;
      p.a = note_state(parse_index(tokens[1], line, "state"), line);
      p.weight = weight_of(tokens[2], line);
      items.push_back(std::move(p));
    } else if (kind == "t") {
      if (tokens.size() < 5) syntax_error(line, "expected 't <src> <dst> <labels...> <weight>'");
      const std::size_t labels = tokens.size() - 4;
      if (labels != header.arity)
        throw Error(ErrorCode::ArityMismatch,
                    "line " + std::to_string(line) + ": " + std::to_string(labels) + " labels in a " +
                        std::to_string(header.arity) + "-tape machine",
                    line);
      Pending p;
      p.kind = 't';
      p.line = line;
      p.a = note_state(parse_index(tokens[1], line, "state"), line);
      p.b = note_state(parse_index(tokens[2], line, "state"), line);
      for (std::size_t k = 0; k < labels; ++k) p.label.push_back(parse_label(tokens[3 + k], line));
      p.weight = weight_of(tokens.back(), line);
      items.push_back(std::move(p));
    } else {
      syntax_error(line, "unknown line kind '" + std::string(kind) + "'");
    }
  }

  Machine<S> m(header.arity, header.eps_mode);
  m.add_states(header.states ? *header.states : (any_state ? max_state + 1 : 0));
  for (auto& p : items) {
    switch (p.kind) {
      case 'i': m.set_initial(p.a, p.weight); break;
      case 'f': m.set_final(p.a, p.weight); break;
      default: m.add_transition(p.a, p.b, std::move(p.label), p.weight);
    }
  }
  return m;
}

}  // namespace

AnyMachine parse_machine(std::string_view text, std::optional<std::string_view> semiring_override) {
  std::vector<std::pair<std::size_t, std::vector<std::string_view>>> body;
  std::optional<Header> header;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    auto tokens = split_tokens(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;
    if (!header) {
      header = parse_header(tokens, line_no);
      continue;
    }
    body.emplace_back(line_no, std::move(tokens));
  }
  if (!header) syntax_error(line_no == 0 ? 1 : line_no, "missing 'ntwfsm' header");

  auto known = [](std::string_view n) {
    return n == TropicalMin::name || n == TropicalMax::name || n == ProbMax::name;
  };
  if (!known(header->semiring)) throw Error(ErrorCode::UnknownSemiring, "'" + header->semiring + "'");
  const std::string name = semiring_override ? std::string(*semiring_override) : header->semiring;
  if (name == TropicalMin::name) return parse_body<TropicalMin>(*header, body);
  if (name == TropicalMax::name) return parse_body<TropicalMax>(*header, body);
  if (name == ProbMax::name) return parse_body<ProbMax>(*header, body);
  throw Error(ErrorCode::UnknownSemiring, "'" + name + "'");
}

std::string_view semiring_name(const AnyMachine& machine) {
  return std::visit([](const auto& m) -> std::string_view {
    return std::remove_cvref_t<decltype(m)>::semiring_type::name;
  }, machine);
}

std::string format_label_element(const LabelElement& element) {
  if (element.is_var()) return "?" + std::to_string(element.var);
  if (element.literal.empty()) return std::string(kEpsToken);
  std::string out;
  for (std::size_t i = 0; i < element.literal.size(); ++i) {
    const Symbol c = element.literal[i];
    switch (c) {
      case kAlignedEpsilon: out += kAepsToken; break;
      case U'\\': out += "\\\\"; break;
      case U' ': out += "\\s"; break;
      case U'\t': out += "\\t"; break;
      case U'\n': out += "\\n"; break;
      case U'\r': out += "\\r"; break;
      case U'<': out += "\\<"; break;
      case U'?':
      case U'#':
        if (i == 0) out += '\\';
        out += static_cast<char>(c);
        break;
      default: out += to_utf8(c);
    }
  }
  return out;
}

std::string write_machine(const AnyMachine& machine) {
  return std::visit([](const auto& m) { return write_machine(m); }, machine);
}

}  // namespace ntwfsm
