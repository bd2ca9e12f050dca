#include "lzsm/io.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace lzsm::io {

namespace {

constexpr char kMagic[4] = {'L', 'Z', 'S', 'M'};
constexpr std::uint32_t kVersion = 1;

void put_u8(std::ostream& os, std::uint8_t v) {
  os.put(static_cast<char>(v));
}

void put_u32(std::ostream& os, std::uint32_t v) {
  for (int i = 0; i < 4; ++i)
    os.put(static_cast<char>((v >> (8 * i)) & 0xffu));
}

void put_f64(std::ostream& os, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i)
    os.put(static_cast<char>((bits >> (8 * i)) & 0xffu));
}

std::uint8_t get_u8(std::istream& is) {
  const int c = is.get();
  if (c < 0) throw std::runtime_error("grid file truncated");
  return static_cast<std::uint8_t>(c);
}

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<std::uint32_t>(get_u8(is)) << (8 * i);
  return v;
}

double get_f64(std::istream& is) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i)
    bits |= static_cast<std::uint64_t>(get_u8(is)) << (8 * i);
  return std::bit_cast<double>(bits);
}

void put_string(std::ostream& os, const std::string& s) {
  put_u32(os, static_cast<std::uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& is) {
  const std::uint32_t n = get_u32(is);
  std::string s(n, '\0');
  is.read(s.data(), static_cast<std::streamsize>(n));
  if (is.gcount() != static_cast<std::streamsize>(n))
    throw std::runtime_error("grid file truncated");
  return s;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return is;
}

std::uint8_t read_header(std::istream& is, const std::string& path) {
  char magic[4];
  is.read(magic, 4);
  if (is.gcount() != 4 || magic[0] != kMagic[0] || magic[1] != kMagic[1] ||
      magic[2] != kMagic[2] || magic[3] != kMagic[3])
    throw std::runtime_error("not a grid file (bad magic): " + path);
  const std::uint32_t version = get_u32(is);
  if (version != kVersion)
    throw std::runtime_error("unsupported grid file version " +
                             std::to_string(version) + ": " + path);
  return get_u8(is);
}

std::ofstream open_text(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << std::setprecision(17);
  return os;
}

void write_comment_block(std::ostream& os, const std::string& text) {
  if (text.empty()) return;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) os << "# " << line << "\n";
}

}  // namespace

void write_pattern(const std::string& path, const spectra::PatternGrid& grid) {
  grid.validate();
  auto os = open_out(path);
  os.write(kMagic, 4);
  put_u32(os, kVersion);
  put_u8(os, 0);
  put_u32(os, static_cast<std::uint32_t>(grid.eps_axis.size()));
  put_u32(os, static_cast<std::uint32_t>(grid.A_axis.size()));
  for (Eigen::Index i = 0; i < grid.eps_axis.size(); ++i)
    put_f64(os, grid.eps_axis(i));
  for (Eigen::Index j = 0; j < grid.A_axis.size(); ++j)
    put_f64(os, grid.A_axis(j));
  for (Eigen::Index i = 0; i < grid.values.rows(); ++i)
    for (Eigen::Index j = 0; j < grid.values.cols(); ++j)
      put_f64(os, grid.values(i, j));
  put_u32(os, static_cast<std::uint32_t>(grid.failed_points));
  put_string(os, grid.provenance);
  if (!os) throw std::runtime_error("write failed: " + path);
}

spectra::PatternGrid read_pattern(const std::string& path) {
  auto is = open_in(path);
  if (read_header(is, path) != 0)
    throw std::runtime_error("not a pattern grid (complex payload): " + path);
  const std::uint32_t ne = get_u32(is);
  const std::uint32_t na = get_u32(is);
  spectra::PatternGrid grid;
  grid.eps_axis.resize(ne);
  grid.A_axis.resize(na);
  grid.values.resize(ne, na);
  for (std::uint32_t i = 0; i < ne; ++i) grid.eps_axis(i) = get_f64(is);
  for (std::uint32_t j = 0; j < na; ++j) grid.A_axis(j) = get_f64(is);
  for (std::uint32_t i = 0; i < ne; ++i)
    for (std::uint32_t j = 0; j < na; ++j) grid.values(i, j) = get_f64(is);
  grid.failed_points = static_cast<int>(get_u32(is));
  grid.provenance = get_string(is);
  grid.validate();
  return grid;
}

void write_spectrum(const std::string& path, const spectra::SpectrumGrid& s) {
  auto os = open_out(path);
  os.write(kMagic, 4);
  put_u32(os, kVersion);
  put_u8(os, 1);
  put_u32(os, static_cast<std::uint32_t>(s.tau_eps_axis.size()));
  put_u32(os, static_cast<std::uint32_t>(s.tau_A_axis.size()));
  for (Eigen::Index i = 0; i < s.tau_eps_axis.size(); ++i)
    put_f64(os, s.tau_eps_axis(i));
  for (Eigen::Index j = 0; j < s.tau_A_axis.size(); ++j)
    put_f64(os, s.tau_A_axis(j));
  for (Eigen::Index i = 0; i < s.values.rows(); ++i)
    for (Eigen::Index j = 0; j < s.values.cols(); ++j) {
      put_f64(os, s.values(i, j).real());
      put_f64(os, s.values(i, j).imag());
    }
  put_f64(os, s.eps_origin);
  put_f64(os, s.A_origin);
  put_f64(os, s.eps_step);
  put_f64(os, s.A_step);
  put_u32(os, static_cast<std::uint32_t>(s.n_eps));
  put_u32(os, static_cast<std::uint32_t>(s.n_A));
  put_u32(os, static_cast<std::uint32_t>(s.pad));
  put_f64(os, s.mean_removed);
  put_string(os, s.provenance);
  if (!os) throw std::runtime_error("write failed: " + path);
}

spectra::SpectrumGrid read_spectrum(const std::string& path) {
  auto is = open_in(path);
  if (read_header(is, path) != 1)
    throw std::runtime_error("not a spectrum grid (real payload): " + path);
  const std::uint32_t ne = get_u32(is);
  const std::uint32_t na = get_u32(is);
  spectra::SpectrumGrid s;
  s.tau_eps_axis.resize(ne);
  s.tau_A_axis.resize(na);
  s.values.resize(ne, na);
  for (std::uint32_t i = 0; i < ne; ++i) s.tau_eps_axis(i) = get_f64(is);
  for (std::uint32_t j = 0; j < na; ++j) s.tau_A_axis(j) = get_f64(is);
  for (std::uint32_t i = 0; i < ne; ++i)
    for (std::uint32_t j = 0; j < na; ++j) {
      const double re = get_f64(is);
      const double im = get_f64(is);
      s.values(i, j) = {re, im};
    }
  s.eps_origin = get_f64(is);
  s.A_origin = get_f64(is);
  s.eps_step = get_f64(is);
  s.A_step = get_f64(is);
  s.n_eps = static_cast<int>(get_u32(is));
  s.n_A = static_cast<int>(get_u32(is));
  s.pad = static_cast<int>(get_u32(is));
  s.mean_removed = get_f64(is);
  s.provenance = get_string(is);
  return s;
}

void write_pattern_csv(const std::string& path,
                       const spectra::PatternGrid& grid) {
  grid.validate();
  auto os = open_text(path);
  write_comment_block(os, grid.provenance);
  os << "eps0,A,P_ex\n";
  for (Eigen::Index i = 0; i < grid.eps_axis.size(); ++i)
    for (Eigen::Index j = 0; j < grid.A_axis.size(); ++j)
      os << grid.eps_axis(i) << "," << grid.A_axis(j) << ","
         << grid.values(i, j) << "\n";
  if (!os) throw std::runtime_error("write failed: " + path);
}

void write_spectrum_csv(const std::string& path,
                        const spectra::SpectrumGrid& s) {
  auto os = open_text(path);
  write_comment_block(os, s.provenance);
  os << "tau_eps,tau_A,re_W,im_W,abs_W\n";
  for (Eigen::Index i = 0; i < s.tau_eps_axis.size(); ++i)
    for (Eigen::Index j = 0; j < s.tau_A_axis.size(); ++j)
      os << s.tau_eps_axis(i) << "," << s.tau_A_axis(j) << ","
         << s.values(i, j).real() << "," << s.values(i, j).imag() << ","
         << std::abs(s.values(i, j)) << "\n";
  if (!os) throw std::runtime_error("write failed: " + path);
}

void write_arcs_csv(const std::string& path,
                    const std::vector<analytic::ArcCurve>& arcs,
                    const std::string& comment) {
  auto os = open_text(path);
  write_comment_block(os, comment);
  os << "branch,tau_eps,tau_A,root_time\n";
  for (const auto& arc : arcs)
    for (std::size_t i = 0; i < arc.samples.size(); ++i)
      os << arc.id << "," << arc.samples[i][0] << "," << arc.samples[i][1]
         << "," << (i < arc.root_times.size() ? arc.root_times[i] : 0.0)
         << "\n";
  if (!os) throw std::runtime_error("write failed: " + path);
}

void write_profile_csv(const std::string& path,
                       const spectra::ArcProfile& profile,
                       const std::string& comment) {
  auto os = open_text(path);
  write_comment_block(os, comment);
  os << "tau_eps,abs_W\n";
  for (std::size_t i = 0; i < profile.tau_eps.size(); ++i)
    os << profile.tau_eps[i] << "," << profile.amplitude[i] << "\n";
  if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace lzsm::io
