#include "gi/stack_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "gi/version.hpp"

namespace gi {

namespace {

static_assert(std::endian::native == std::endian::little,
              "stack container assumes a little-endian host");

constexpr char kMagic[8] = {'G', 'I', 'S', 'T', 'A', 'C', 'K', '\0'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("stack read: truncated file");
  return v;
}

}  // namespace

void write_stack(std::ostream& out, const FrameStack& st) {
  out.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, st.normalized ? 1 : 0);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(st.mask.rows));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(st.mask.cols));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(st.frames));
  put<std::uint64_t>(out, st.seed);

  put<std::uint8_t>(out, st.params.source == SourceKind::TwinBeam ? 0 : 1);
  put<double>(out, st.params.mu);
  put<std::uint64_t>(out, static_cast<std::uint64_t>(st.params.modes_per_pixel));
  put<double>(out, st.params.eta1);
  put<double>(out, st.params.eta2);
  put<std::uint64_t>(out,
                     static_cast<std::uint64_t>(st.params.resolution_cells));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(st.params.frames));
  put<double>(out, st.params.pump_mu_variance);

  put<std::uint8_t>(out, st.frame_mu.empty() ? 0 : 1);
  out.write(reinterpret_cast<const char*>(st.mask.transmission.data()),
            static_cast<std::streamsize>(st.mask.transmission.size()));
  if (!st.frame_mu.empty())
    out.write(reinterpret_cast<const char*>(st.frame_mu.data()),
              static_cast<std::streamsize>(st.frame_mu.size() * sizeof(double)));

  const std::size_t cells = static_cast<std::size_t>(st.mask.rows) *
                            static_cast<std::size_t>(st.mask.cols);
  for (long k = 0; k < st.frames; ++k) {
    const std::size_t base = static_cast<std::size_t>(k) * cells;
    if (st.normalized) {
      out.write(reinterpret_cast<const char*>(st.obj_values.data() + base),
                static_cast<std::streamsize>(cells * sizeof(double)));
      out.write(reinterpret_cast<const char*>(st.ref_values.data() + base),
                static_cast<std::streamsize>(cells * sizeof(double)));
    } else {
      out.write(reinterpret_cast<const char*>(st.obj_counts.data() + base),
                static_cast<std::streamsize>(cells * sizeof(std::uint32_t)));
      out.write(reinterpret_cast<const char*>(st.ref_counts.data() + base),
                static_cast<std::streamsize>(cells * sizeof(std::uint32_t)));
    }
  }
  if (!out) throw std::runtime_error("stack write failed");
}

void write_stack_file(const std::string& path, const FrameStack& stack) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  write_stack(f, stack);
}

FrameStack read_stack(std::istream& in) {
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("stack read: bad magic");
  const auto version = get<std::uint32_t>(in);
  if (version != kVersion)
    throw std::runtime_error("stack read: unsupported version " +
                             std::to_string(version));

  FrameStack st;
  st.normalized = get<std::uint32_t>(in) != 0;
  st.mask.rows = static_cast<int>(get<std::uint32_t>(in));
  st.mask.cols = static_cast<int>(get<std::uint32_t>(in));
  st.frames = static_cast<long>(get<std::uint64_t>(in));
  st.seed = get<std::uint64_t>(in);

  st.params.source =
      get<std::uint8_t>(in) == 0 ? SourceKind::TwinBeam : SourceKind::Thermal;
  st.params.mu = get<double>(in);
  st.params.modes_per_pixel = static_cast<long>(get<std::uint64_t>(in));
  st.params.eta1 = get<double>(in);
  st.params.eta2 = get<double>(in);
  st.params.resolution_cells = static_cast<long>(get<std::uint64_t>(in));
  st.params.frames = static_cast<long>(get<std::uint64_t>(in));
  st.params.pump_mu_variance = get<double>(in);

  const bool has_mu = get<std::uint8_t>(in) != 0;
  if (st.mask.rows < 1 || st.mask.cols < 1)
    throw std::runtime_error("stack read: bad grid");
  const std::size_t cells = static_cast<std::size_t>(st.mask.rows) *
                            static_cast<std::size_t>(st.mask.cols);
  st.mask.transmission.resize(cells);
  in.read(reinterpret_cast<char*>(st.mask.transmission.data()),
          static_cast<std::streamsize>(cells));
  if (has_mu) {
    st.frame_mu.resize(static_cast<std::size_t>(st.frames));
    in.read(reinterpret_cast<char*>(st.frame_mu.data()),
            static_cast<std::streamsize>(st.frame_mu.size() * sizeof(double)));
  }
  const std::size_t total = static_cast<std::size_t>(st.frames) * cells;
  if (st.normalized) {
    st.obj_values.resize(total);
    st.ref_values.resize(total);
  } else {
    st.obj_counts.resize(total);
    st.ref_counts.resize(total);
  }
  for (long k = 0; k < st.frames; ++k) {
    const std::size_t base = static_cast<std::size_t>(k) * cells;
    if (st.normalized) {
      in.read(reinterpret_cast<char*>(st.obj_values.data() + base),
              static_cast<std::streamsize>(cells * sizeof(double)));
      in.read(reinterpret_cast<char*>(st.ref_values.data() + base),
              static_cast<std::streamsize>(cells * sizeof(double)));
    } else {
      in.read(reinterpret_cast<char*>(st.obj_counts.data() + base),
              static_cast<std::streamsize>(cells * sizeof(std::uint32_t)));
      in.read(reinterpret_cast<char*>(st.ref_counts.data() + base),
              static_cast<std::streamsize>(cells * sizeof(std::uint32_t)));
    }
  }
  if (!in) throw std::runtime_error("stack read: truncated payload");
  return st;
}

FrameStack read_stack_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  return read_stack(f);
}

void export_stack_csv(std::ostream& out, const FrameStack& st) {
  out << "# gistat " << kToolVersion << " frame stack; source="
      << to_string(st.params.source) << " mu=" << st.params.mu
      << " M=" << st.params.modes_per_pixel << " eta1=" << st.params.eta1
      << " eta2=" << st.params.eta2 << " seed=" << st.seed << "\n";
  out << "frame,row,col,transmission,object,reference\n";
  const auto old_precision = out.precision(17);
  for (long k = 0; k < st.frames; ++k)
    for (int r = 0; r < st.mask.rows; ++r)
      for (int c = 0; c < st.mask.cols; ++c) {
        const int cell = r * st.mask.cols + c;
        out << k << ',' << r << ',' << c << ','
            << static_cast<int>(st.mask.transmission[cell]) << ','
            << st.obj(k, cell) << ',' << st.ref(k, cell) << "\n";
      }
  out.precision(old_precision);
}

}  // namespace gi
