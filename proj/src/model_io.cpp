#include "insertnco/model_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace insertnco {

static_assert(std::endian::native == std::endian::little,
              "weights files are little-endian; byte-swapping is not implemented");

namespace {

constexpr char kMagic[4] = {'L', '2', 'C', 'I'};
constexpr std::uint16_t kVersion = 1;

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T take(std::istream& in) {
  T value;
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw Error(ErrorKind::CorruptFile, "weights file truncated");
  return value;
}

}  // namespace

void save_params(const ModelParams<float>& params, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::CorruptFile, "cannot open " + path + " for writing");
  out.write(kMagic, 4);
  put<std::uint16_t>(out, kVersion);
  const ModelConfig& c = params.config;
  put<std::uint32_t>(out, c.embed_dim);
  put<std::uint32_t>(out, c.decoder_layers);
  put<std::uint32_t>(out, c.num_heads);
  put<std::uint32_t>(out, c.ff_dim);
  put<std::uint32_t>(out, c.input_dim);
  put<std::uint8_t>(out, c.include_unvisited ? 1 : 0);
  visit_params(params, [&](const std::string& name, const Matrix<float>& t) {
    put<std::uint16_t>(out, static_cast<std::uint16_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    if (t.rows() == 1) {
      put<std::uint8_t>(out, 1);
      put<std::uint32_t>(out, static_cast<std::uint32_t>(t.cols()));
    } else {
      put<std::uint8_t>(out, 2);
      put<std::uint32_t>(out, static_cast<std::uint32_t>(t.rows()));
      put<std::uint32_t>(out, static_cast<std::uint32_t>(t.cols()));
    }
    for (Eigen::Index r = 0; r < t.rows(); ++r)
      for (Eigen::Index cc = 0; cc < t.cols(); ++cc) put<float>(out, t(r, cc));
  });
}

ModelParams<float> load_params(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::CorruptFile, "cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw Error(ErrorKind::VersionMismatch, "not a weights file (bad magic)");
  const auto version = take<std::uint16_t>(in);
  if (version != kVersion)
    throw Error(ErrorKind::VersionMismatch,
                "unsupported weights version " + std::to_string(version));

  ModelConfig config;
  config.embed_dim = static_cast<int>(take<std::uint32_t>(in));
  config.decoder_layers = static_cast<int>(take<std::uint32_t>(in));
  config.num_heads = static_cast<int>(take<std::uint32_t>(in));
  config.ff_dim = static_cast<int>(take<std::uint32_t>(in));
  config.input_dim = static_cast<int>(take<std::uint32_t>(in));
  config.include_unvisited = take<std::uint8_t>(in) != 0;

  Rng rng(0);
  ModelParams<float> params = init_params<float>(config, rng);
  std::size_t loaded = 0;
  std::size_t expected = 0;
  visit_params(params, [&](const std::string&, const Matrix<float>&) { ++expected; });

  while (loaded < expected) {
    const auto name_len = take<std::uint16_t>(in);
    std::string name(name_len, '\0');
    in.read(name.data(), name_len);
    if (!in) throw Error(ErrorKind::CorruptFile, "weights file truncated");
    const auto rank = take<std::uint8_t>(in);
    std::uint64_t count = 1;
    for (int i = 0; i < rank; ++i) count *= take<std::uint32_t>(in);

    Matrix<float>* target = nullptr;
    visit_params(params, [&](const std::string& n, Matrix<float>& t) {
      if (n == name) target = &t;
    });
    if (target == nullptr)
      throw Error(ErrorKind::CorruptFile, "unknown tensor '" + name + "'");
    if (count != static_cast<std::uint64_t>(target->size()))
      throw Error(ErrorKind::CorruptFile, "tensor '" + name + "' has wrong size");
    for (Eigen::Index r = 0; r < target->rows(); ++r)
      for (Eigen::Index c = 0; c < target->cols(); ++c) (*target)(r, c) = take<float>(in);
    ++loaded;
  }
  return params;
}

}  // namespace insertnco
