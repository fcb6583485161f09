#include "swalloc/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "swalloc/errors.hpp"

namespace swalloc {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

// Splits on whitespace after dropping comments; ':' and ';' become tokens of their own.
std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string spaced;
    for (char c : raw) {
      if (c == ':' || c == ';') {
        spaced += ' ';
        spaced += c;
        spaced += ' ';
      } else {
        spaced += c;
      }
    }
    std::istringstream ss(spaced);
    Line line{number, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

double parse_double(const std::string& tok, int line) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) throw ParseError("expected a number, got '" + tok + "'", line);
  return v;
}

std::size_t parse_count(const std::string& tok, int line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("expected a non-negative integer, got '" + tok + "'", line);
  }
  return v;
}

// 1-based index in [1, limit], returned 0-based.
std::size_t parse_index(const std::string& tok, std::size_t limit, const char* what, int line) {
  const std::size_t v = parse_count(tok, line);
  if (v == 0 || v > limit) {
    throw ParseError(std::string(what) + " " + tok + " out of range 1.." + std::to_string(limit), line);
  }
  return v - 1;
}

class Parser {
 public:
  explicit Parser(std::vector<Line> lines) : lines_(std::move(lines)) {}

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const { return lines_[pos_]; }
  const Line& next() { return lines_[pos_++]; }
  int last_line() const { return lines_.empty() ? 0 : lines_.back().number; }

  // The next line must read `<key> <count>`.
  std::size_t expect_count(const std::string& key) {
    if (done()) throw ParseError("missing '" + key + "' line", last_line() + 1);
    const Line& l = next();
    if (l.tokens[0] != key || l.tokens.size() != 2) throw ParseError("expected '" + key + " <count>'", l.number);
    return parse_count(l.tokens[1], l.number);
  }

  bool at_block_start() const {
    return done() || peek().tokens[0] == "bidder" || peek().tokens[0] == "matroid";
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

std::vector<double> numbers_after_key(const Line& l, std::size_t expected, const char* key) {
  if (l.tokens.size() - 1 != expected) {
    throw ParseError(std::string(key) + " needs " + std::to_string(expected) + " values, got " +
                         std::to_string(l.tokens.size() - 1),
                     l.number);
  }
  std::vector<double> out;
  out.reserve(expected);
  for (std::size_t t = 1; t < l.tokens.size(); ++t) out.push_back(parse_double(l.tokens[t], l.number));
  return out;
}

SetFunctionPtr parse_table(Parser& p, std::size_t m, int header) {
  if (m > kMaxTableItems) throw ParseError("table bidders are limited to 20 items", header);
  if (p.done() || p.peek().tokens[0] != "values") throw ParseError("table bidder needs a 'values' line", header);
  const Line& l = p.next();
  auto values = numbers_after_key(l, std::size_t{1} << m, "values");
  try {
    return std::make_shared<const TableFunction>(TableFunction::checked(m, std::move(values)));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), l.number);
  }
}

CoverageFunction parse_coverage_body(Parser& p, std::size_t m, int header, std::vector<double>* prices) {
  std::optional<std::size_t> universe;
  std::optional<std::vector<double>> weights;
  std::vector<ItemSet> covers(m);
  std::vector<bool> seen(m, false);
  while (!p.at_block_start()) {
    const Line& l = p.next();
    const std::string& key = l.tokens[0];
    if (key == "universe") {
      if (universe) throw ParseError("duplicate 'universe' line", l.number);
      if (l.tokens.size() != 2) throw ParseError("expected 'universe <U>'", l.number);
      universe = parse_count(l.tokens[1], l.number);
    } else if (key == "weights") {
      if (!universe) throw ParseError("'weights' must follow 'universe'", l.number);
      if (weights) throw ParseError("duplicate 'weights' line", l.number);
      weights = numbers_after_key(l, *universe, "weights");
      for (double w : *weights) {
        if (w < 0) throw ParseError("coverage weights must be non-negative", l.number);
      }
    } else if (key == "covers") {
      if (!universe) throw ParseError("'covers' must follow 'universe'", l.number);
      if (l.tokens.size() < 3 || l.tokens[2] != ":") throw ParseError("expected 'covers <i>: <e> ...'", l.number);
      const std::size_t item = parse_index(l.tokens[1], m, "item", l.number);
      if (seen[item]) throw ParseError("duplicate 'covers' line for item " + l.tokens[1], l.number);
      seen[item] = true;
      for (std::size_t t = 3; t < l.tokens.size(); ++t) {
        covers[item].insert(parse_index(l.tokens[t], *universe, "universe element", l.number));
      }
    } else if (key == "prices" && prices) {
      if (!prices->empty()) throw ParseError("duplicate 'prices' line", l.number);
      *prices = numbers_after_key(l, m, "prices");
    } else {
      throw ParseError("unexpected '" + key + "' in " + (prices ? "priced" : "coverage") + " bidder", l.number);
    }
  }
  if (!universe || !weights) throw ParseError("coverage bidder needs 'universe' and 'weights'", header);
  return CoverageFunction(std::move(*weights), std::move(covers));
}

SetFunctionPtr parse_cut(Parser& p, std::size_t m) {
  std::vector<WeightedEdge> edges;
  while (!p.at_block_start()) {
    const Line& l = p.next();
    if (l.tokens[0] != "edge" || l.tokens.size() != 4) throw ParseError("expected 'edge <a> <b> <w>'", l.number);
    const Item a = parse_index(l.tokens[1], m, "vertex", l.number);
    const Item b = parse_index(l.tokens[2], m, "vertex", l.number);
    const double w = parse_double(l.tokens[3], l.number);
    if (a == b) throw ParseError("self-loops are not allowed", l.number);
    if (w < 0) throw ParseError("edge weights must be non-negative", l.number);
    edges.push_back({a, b, w});
  }
  return std::make_shared<const CutFunction>(m, std::move(edges));
}

SetFunctionPtr parse_bidder(Parser& p, std::size_t m, const std::string& kind, int header) {
  if (kind == "table") {
    auto f = parse_table(p, m, header);
    if (!p.at_block_start()) throw ParseError("unexpected '" + p.peek().tokens[0] + "' in table bidder", p.peek().number);
    return f;
  }
  if (kind == "coverage") return std::make_shared<const CoverageFunction>(parse_coverage_body(p, m, header, nullptr));
  if (kind == "cut") return parse_cut(p, m);
  if (kind == "priced") {
    std::vector<double> prices;
    CoverageFunction base = parse_coverage_body(p, m, header, &prices);
    if (prices.empty() && m > 0) throw ParseError("priced bidder needs a 'prices' line", header);
    try {
      return std::make_shared<const PricedFunction>(std::move(base), std::move(prices));
    } catch (const std::exception& e) {
      throw ParseError(e.what(), header);
    }
  }
  throw ParseError("unknown bidder kind '" + kind + "'", header);
}

ItemSet parse_elements(const Line& l, std::size_t from, std::size_t to, std::size_t ground) {
  ItemSet s;
  for (std::size_t t = from; t < to; ++t) {
    const Item e = parse_index(l.tokens[t], ground, "element", l.number);
    if (s.contains(e)) throw ParseError("element " + l.tokens[t] + " repeated", l.number);
    s.insert(e);
  }
  return s;
}

MatroidPtr parse_matroid(Parser& p, const Line& header, std::size_t ground) {
  if (header.tokens.size() < 2) throw ParseError("expected 'matroid <kind>'", header.number);
  const std::string& kind = header.tokens[1];
  try {
    if (kind == "uniform") {
      if (header.tokens.size() != 3) throw ParseError("expected 'matroid uniform <r>'", header.number);
      return std::make_shared<const UniformMatroid>(ground, parse_count(header.tokens[2], header.number));
    }
    if (header.tokens.size() != 2) throw ParseError("unexpected tokens after 'matroid " + kind + "'", header.number);
    if (kind == "partition") {
      std::vector<ItemSet> parts;
      while (!p.at_block_start()) {
        const Line& l = p.next();
        if (l.tokens[0] != "part" || l.tokens.size() < 3 || l.tokens[2] != ":") {
          throw ParseError("expected 'part <j>: <e> ...'", l.number);
        }
        if (parse_count(l.tokens[1], l.number) != parts.size() + 1) throw ParseError("parts must be numbered 1, 2, ...", l.number);
        parts.push_back(parse_elements(l, 3, l.tokens.size(), ground));
      }
      return std::make_shared<const PartitionMatroid>(PartitionStructure(ground, std::move(parts)));
    }
    if (kind == "table") {
      std::vector<ItemSet> independent;
      while (!p.at_block_start()) {
        const Line& l = p.next();
        if (l.tokens[0] != "independent" || l.tokens.size() < 2 || l.tokens[1] != ":") {
          throw ParseError("expected 'independent: <set> ; <set> ...'", l.number);
        }
        std::size_t start = 2;
        for (std::size_t t = 2; t <= l.tokens.size(); ++t) {
          if (t == l.tokens.size() || l.tokens[t] == ";") {
            independent.push_back(parse_elements(l, start, t, ground));
            start = t + 1;
          }
        }
      }
      return std::make_shared<const TableMatroid>(ground, independent);
    }
  } catch (const DomainError& e) {
    throw ParseError(e.what(), header.number);
  } catch (const CapacityError& e) {
    throw ParseError(e.what(), header.number);
  }
  throw ParseError("unknown matroid kind '" + kind + "'", header.number);
}

void write_items(std::ostream& out, const ItemSet& s) {
  s.for_each([&](Item e) { out << ' ' << e + 1; });
}

void write_coverage_body(std::ostream& out, const CoverageFunction& f) {
  out << "universe " << f.weights().size() << '\n';
  out << "weights";
  for (double w : f.weights()) out << ' ' << format_number(w);
  out << '\n';
  for (Item i = 0; i < f.covers().size(); ++i) {
    if (f.covers()[i].empty()) continue;
    out << "covers " << i + 1 << ':';
    write_items(out, f.covers()[i]);
    out << '\n';
  }
}

void write_bidder(std::ostream& out, std::size_t j, const SetFunction& f) {
  out << "bidder " << j + 1 << ' ';
  if (const auto* c = dynamic_cast<const CoverageFunction*>(&f)) {
    out << "coverage\n";
    write_coverage_body(out, *c);
  } else if (const auto* cut = dynamic_cast<const CutFunction*>(&f)) {
    out << "cut\n";
    for (const auto& e : cut->edges()) out << "edge " << e.a + 1 << ' ' << e.b + 1 << ' ' << format_number(e.weight) << '\n';
  } else if (const auto* pr = dynamic_cast<const PricedFunction*>(&f)) {
    out << "priced\n";
    write_coverage_body(out, pr->base());
    out << "prices";
    for (double v : pr->prices()) out << ' ' << format_number(v);
    out << '\n';
  } else {
    const TableFunction t = dynamic_cast<const TableFunction*>(&f) ? static_cast<const TableFunction&>(f) : materialize(f);
    out << "table\nvalues";
    for (double v : t.values()) out << ' ' << format_number(v);
    out << '\n';
  }
}

void write_matroid(std::ostream& out, const Matroid& m) {
  if (const auto* pm = dynamic_cast<const PartitionMatroid*>(&m)) {
    out << "matroid partition\n";
    const auto& parts = pm->structure().parts();
    for (std::size_t j = 0; j < parts.size(); ++j) {
      out << "part " << j + 1 << ':';
      write_items(out, parts[j]);
      out << '\n';
    }
    return;
  }
  if (const auto* um = dynamic_cast<const UniformMatroid*>(&m)) {
    out << "matroid uniform " << um->rank() << '\n';
    return;
  }
  std::vector<ItemSet> bases;
  if (const auto* tm = dynamic_cast<const TableMatroid*>(&m)) {
    bases = tm->bases();
  } else {
    if (m.ground_size() > TableMatroid::kMaxGround) throw CapacityError("matroid too large to tabulate for writing");
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << m.ground_size()); ++x) {
      const ItemSet s = ItemSet::from_mask(x);
      if (s.size() == m.rank() && m.is_independent(s)) bases.push_back(s);
    }
  }
  out << "matroid table\nindependent:";
  for (std::size_t b = 0; b < bases.size(); ++b) {
    if (b > 0) out << " ;";
    write_items(out, bases[b]);
  }
  out << '\n';
}

}  // namespace

ProblemInstance parse_instance(std::istream& in, std::string id) {
  Parser p(tokenize(in));
  if (p.done()) throw ParseError("empty instance file", 1);
  {
    const Line& l = p.next();
    if (l.tokens.size() != 2 || l.tokens[0] != "swinstance") throw ParseError("expected header 'swinstance 1'", l.number);
    if (l.tokens[1] != "1") throw ParseError("unsupported format version " + l.tokens[1], l.number);
  }
  ProblemInstance out;
  out.id = std::move(id);
  const std::size_t m = p.expect_count("items");
  const std::size_t n = p.expect_count("bidders");
  out.welfare.items = m;
  std::vector<SetFunctionPtr> bidders(n);
  while (!p.done()) {
    const Line& l = p.next();
    if (l.tokens[0] == "bidder") {
      if (l.tokens.size() != 3) throw ParseError("expected 'bidder <j> <kind>'", l.number);
      const std::size_t j = parse_index(l.tokens[1], n, "bidder", l.number);
      if (bidders[j]) throw ParseError("bidder " + l.tokens[1] + " defined twice", l.number);
      bidders[j] = parse_bidder(p, m, l.tokens[2], l.number);
    } else if (l.tokens[0] == "matroid") {
      if (out.matroid) throw ParseError("only one matroid block is allowed", l.number);
      out.matroid = parse_matroid(p, l, m);
    } else {
      throw ParseError("unexpected '" + l.tokens[0] + "'", l.number);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!bidders[j]) throw ParseError("bidder " + std::to_string(j + 1) + " is not defined", p.last_line());
    out.welfare.bidders.emplace_back(bidders[j]);
  }
  return out;
}

ProblemInstance parse_instance_string(const std::string& text, std::string id) {
  std::istringstream in(text);
  return parse_instance(in, std::move(id));
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return parse_instance(in, path.stem().string());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

MatroidPtr load_matroid(const std::filesystem::path& path, std::size_t ground_size) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Parser p(tokenize(in));
  if (p.done()) throw ParseError("empty matroid file", 1);
  const Line& l = p.next();
  if (l.tokens[0] != "matroid") throw ParseError("expected 'matroid <kind>'", l.number);
  MatroidPtr m = parse_matroid(p, l, ground_size);
  if (!p.done()) throw ParseError("unexpected '" + p.peek().tokens[0] + "'", p.peek().number);
  return m;
}

void write_instance(std::ostream& out, const ProblemInstance& instance) {
  const auto& w = instance.welfare;
  out << "swinstance 1\n";
  out << "# " << instance.id << '\n';
  out << "items " << w.items << '\n';
  out << "bidders " << w.bidder_count() << '\n';
  for (std::size_t j = 0; j < w.bidder_count(); ++j) write_bidder(out, j, w.bidders[j].function());
  if (instance.matroid) write_matroid(out, *instance.matroid);
}

std::string to_text(const ProblemInstance& instance) {
  std::ostringstream out;
  write_instance(out, instance);
  return out.str();
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::vector<std::filesystem::path> instance_files(const std::filesystem::path& path) {
  std::vector<std::filesystem::path> out;
  if (std::filesystem::is_directory(path)) {
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".inst") out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
  } else {
    if (!std::filesystem::exists(path)) throw std::runtime_error("no such file or directory: " + path.string());
    out.push_back(path);
  }
  return out;
}

}  // namespace swalloc
