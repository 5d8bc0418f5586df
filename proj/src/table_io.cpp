#include "loopforge/table_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "loopforge/error.hpp"

namespace loopforge {

namespace {

struct Line {
  std::size_t number;  // 1-based
  std::string_view text;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Non-empty lines with comments stripped. Blank lines are kept as empty
// entries when `keep_blank` is set, so table streams can be split on them.
std::vector<Line> content_lines(std::string_view text, bool keep_blank) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    const bool is_comment = trim(line).starts_with('#');
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (!line.empty() || (keep_blank && !is_comment)) out.push_back({number, line});
  }
  return out;
}

[[noreturn]] void fail(const std::string& source, std::size_t line,
                       const std::string& what) {
  throw InputError(source + ":" + std::to_string(line) + ": " + what);
}

std::vector<long> parse_ints(const std::string& source, const Line& line) {
  std::vector<long> out;
  std::string_view rest = line.text;
  while (true) {
    rest = trim(rest);
    if (rest.empty()) break;
    long value = 0;
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
    if (ec != std::errc{} || (ptr != rest.data() + rest.size() && *ptr != ' ' && *ptr != '\t')) {
      fail(source, line.number, "expected an integer in \"" + std::string(line.text) + "\"");
    }
    out.push_back(value);
    rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
  }
  return out;
}

LoopTable parse_table_lines(std::span<const Line> lines, const std::string& source) {
  if (lines.empty()) throw InputError(source + ": empty table");
  const auto header = parse_ints(source, lines[0]);
  if (header.size() != 1 || header[0] <= 0 || header[0] > 0xFFFF) {
    fail(source, lines[0].number, "first line must be the order n >= 1");
  }
  const auto n = static_cast<std::size_t>(header[0]);
  if (lines.size() < n + 1) {
    fail(source, lines.back().number,
         "expected " + std::to_string(n) + " table rows, found " +
             std::to_string(lines.size() - 1));
  }
  std::vector<std::vector<Label>> raw(n);
  for (std::size_t r = 0; r < n; ++r) {
    const Line& line = lines[r + 1];
    const auto values = parse_ints(source, line);
    if (values.size() != n) {
      fail(source, line.number,
           "row " + std::to_string(r) + " has " + std::to_string(values.size()) +
               " entries, expected " + std::to_string(n));
    }
    for (long v : values) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        fail(source, line.number,
             "entry " + std::to_string(v) + " is outside 0.." + std::to_string(n - 1));
      }
      raw[r].push_back(static_cast<Label>(v));
    }
  }
  std::optional<Label> identity;
  std::size_t last_line = lines[n].number;
  for (std::size_t i = n + 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (!line.text.starts_with("identity") || identity) {
      fail(source, line.number, "unexpected line \"" + std::string(line.text) + "\"");
    }
    const auto values = parse_ints(source, {line.number, line.text.substr(8)});
    if (values.size() != 1 || values[0] < 0 || static_cast<std::size_t>(values[0]) >= n) {
      fail(source, line.number, "identity must be a single label in 0.." + std::to_string(n - 1));
    }
    identity = static_cast<Label>(values[0]);
    last_line = line.number;
  }
  try {
    return validate_table(raw, identity);
  } catch (const Error& e) {
    fail(source, last_line, e.what());
  }
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Permutation parse_permutation_line(const std::string& source, const Line& line) {
  const auto values = parse_ints(source, line);
  std::vector<Label> image;
  for (long v : values) {
    if (v < 0 || static_cast<std::size_t>(v) >= values.size()) {
      fail(source, line.number, "image " + std::to_string(v) + " is outside 0.." +
                                    std::to_string(values.size() - 1));
    }
    image.push_back(static_cast<Label>(v));
  }
  try {
    return Permutation(std::move(image));
  } catch (const Error& e) {
    fail(source, line.number, e.what());
  }
}

}  // namespace

LoopTable parse_table(std::string_view text, const std::string& source) {
  const auto lines = content_lines(text, false);
  return parse_table_lines(lines, source);
}

LoopTable read_table_file(const std::filesystem::path& path) {
  return parse_table(slurp(path), path.string());
}

std::string format_table(const LoopTable& g) {
  std::ostringstream out;
  const auto n = static_cast<Label>(g.order());
  out << g.order() << '\n';
  for (Label x = 0; x < n; ++x) {
    for (Label y = 0; y < n; ++y) {
      if (y) out << ' ';
      out << g(x, y);
    }
    out << '\n';
  }
  out << "identity " << g.identity() << '\n';
  return out.str();
}

std::vector<LoopTable> parse_table_stream(std::string_view text,
                                          const std::string& source) {
  const auto lines = content_lines(text, true);
  std::vector<LoopTable> out;
  std::vector<Line> block;
  auto flush = [&] {
    if (!block.empty()) out.push_back(parse_table_lines(block, source));
    block.clear();
  };
  for (const auto& line : lines) {
    if (line.text.empty()) {
      flush();
    } else {
      block.push_back(line);
    }
  }
  flush();
  return out;
}

Permutation parse_permutation(std::string_view text, const std::string& source) {
  const auto lines = content_lines(text, false);
  if (lines.size() != 1) {
    throw InputError(source + ": expected exactly one permutation line, found " +
                     std::to_string(lines.size()));
  }
  return parse_permutation_line(source, lines[0]);
}

Permutation read_permutation_file(const std::filesystem::path& path) {
  return parse_permutation(slurp(path), path.string());
}

std::string format_permutation(const Permutation& p) {
  return p.to_string() + '\n';
}

MappingTriple parse_triple(std::string_view text, const std::string& source) {
  const auto lines = content_lines(text, false);
  if (lines.size() != 3) {
    throw InputError(source + ": expected three permutation lines (A, B, C), found " +
                     std::to_string(lines.size()));
  }
  auto a = parse_permutation_line(source, lines[0]);
  auto b = parse_permutation_line(source, lines[1]);
  auto c = parse_permutation_line(source, lines[2]);
  if (a.degree() != b.degree() || a.degree() != c.degree()) {
    fail(source, lines[2].number, "triple components differ in degree");
  }
  return MappingTriple(std::move(a), std::move(b), std::move(c));
}

MappingTriple read_triple_file(const std::filesystem::path& path) {
  return parse_triple(slurp(path), path.string());
}

std::string format_triple(const MappingTriple& t) {
  return format_permutation(t.a()) + format_permutation(t.b()) +
         format_permutation(t.c());
}

}  // namespace loopforge
