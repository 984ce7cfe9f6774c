#include "aniso/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <iterator>
#include <sstream>

#include "aniso/error.hpp"

namespace aniso {
namespace {

constexpr std::size_t kMaxHeader = 512;

[[noreturn]] void corrupt(const std::string& origin, std::size_t offset, const std::string& what) {
  fail(ErrorKind::io, origin + ": corrupted AFLD1 data at byte offset " + std::to_string(offset) + ": " + what);
}

struct Token {
  std::string text;
  std::size_t offset;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    out.push_back({line.substr(start, i - start), start});
  }
  return out;
}

template <class T>
bool parse_number(const std::string& s, T& value) {
  if constexpr (std::is_integral_v<T>) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    return ec == std::errc() && ptr == s.data() + s.size();
  } else {
    std::istringstream is(s);
    is.imbue(std::locale::classic());
    is >> value;
    return !is.fail() && is.eof();
  }
}

double from_le(const char* p) {
  std::uint64_t bits;
  std::memcpy(&bits, p, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

void to_le(double v, char* p) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  std::memcpy(p, &bits, 8);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_field(const std::filesystem::path& path, const Field& f) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::io, "cannot open " + path.string() + " for writing");
  const Grid& g = f.grid();
  std::string header = "AFLD1";
  for (int a = 0; a < 3; ++a) header += " " + std::to_string(g.n(a));
  for (int a = 0; a < 3; ++a) header += " " + format_double(g.length(a));
  header += " " + std::to_string(f.ncomp()) + "\n";
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  std::vector<char> payload(f.size() * 8);
  for (std::size_t i = 0; i < f.size(); ++i) to_le(f.values()[i], payload.data() + 8 * i);
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  require(static_cast<bool>(out), ErrorKind::io, "write failed for " + path.string());
}

Field parse_field(const std::string& bytes, const std::string& origin) {
  const std::size_t nl = bytes.find('\n');
  if (nl == std::string::npos || nl > kMaxHeader)
    corrupt(origin, std::min(bytes.size(), kMaxHeader), "header line not terminated");
  const std::string line = bytes.substr(0, nl);
  const auto tokens = tokenize(line);
  if (tokens.empty() || tokens[0].text != "AFLD1") corrupt(origin, 0, "missing AFLD1 magic");
  if (tokens.size() != 8)
    corrupt(origin, tokens.size() < 8 ? nl : tokens[8].offset,
            "expected 7 header fields after the magic, found " + std::to_string(tokens.size() - 1));
  std::array<int, 3> dims{};
  std::array<double, 3> lengths{};
  int ncomp = 0;
  for (int a = 0; a < 3; ++a)
    if (!parse_number(tokens[1 + a].text, dims[a]) || dims[a] < 8 || (dims[a] & (dims[a] - 1)) != 0)
      corrupt(origin, tokens[1 + a].offset, "invalid dimension '" + tokens[1 + a].text + "'");
  for (int a = 0; a < 3; ++a)
    if (!parse_number(tokens[4 + a].text, lengths[a]) || !(lengths[a] > 0.0))
      corrupt(origin, tokens[4 + a].offset, "invalid box length '" + tokens[4 + a].text + "'");
  if (!parse_number(tokens[7].text, ncomp) || (ncomp != 1 && ncomp != 3))
    corrupt(origin, tokens[7].offset, "invalid component count '" + tokens[7].text + "'");

  Field f(Grid(dims, lengths), ncomp);
  const std::size_t start = nl + 1;
  const std::size_t expected = f.size() * 8;
  const std::size_t available = bytes.size() - start;
  if (available < expected)
    corrupt(origin, bytes.size(), "payload truncated, expected " + std::to_string(expected) + " bytes, found " +
                                      std::to_string(available));
  if (available > expected) corrupt(origin, start + expected, "trailing bytes after payload");
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = from_le(bytes.data() + start + 8 * i);
    if (!std::isfinite(v)) corrupt(origin, start + 8 * i, "non-finite sample");
    f.values()[i] = v;
  }
  return f;
}

Field read_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::io, "cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_field(bytes, path.string());
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> header)
    : CsvWriter(path, std::vector<std::string>(header)) {}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), out_(path), columns_(header.size()) {
  require(static_cast<bool>(out_), ErrorKind::io, "cannot open " + path.string() + " for writing");
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  require(cells.size() == columns_, ErrorKind::structural, "CSV row width mismatch in " + path_.string());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
  require(static_cast<bool>(out_), ErrorKind::io, "write failed for " + path_.string());
}

void write_block_csv(const std::filesystem::path& path, const BlockTable& norms, double p) {
  CsvWriter csv(path, {"k", "j", "energy_Lp", "p"});
  for (int k = norms.shells_h().lo; k <= norms.shells_h().hi; ++k)
    for (int j = norms.shells_v().lo; j <= norms.shells_v().hi; ++j)
      csv.row({std::to_string(k), std::to_string(j), format_double(norms.at(k, j)), format_double(p)});
}

}  // namespace aniso
