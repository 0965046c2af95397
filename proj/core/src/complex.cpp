#include "ydsim/complex.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ydsim {

Complex::Complex(uint32_t n, uint32_t d, std::vector<uint64_t> d_face_ranks)
    : n_(n), d_(d), faces_(std::move(d_face_ranks)) {
  if (d_ < 1) throw std::invalid_argument("Complex: dimension must be >= 1");
  if (n_ < d_ + 1)
    throw std::invalid_argument("Complex: need at least d+1 vertices");
  std::sort(faces_.begin(), faces_.end());
  faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
  if (!faces_.empty() && faces_.back() >= binomial(n_, d_ + 1))
    throw std::invalid_argument("Complex: face rank out of range for n");
}

bool Complex::contains(uint64_t face_rank) const {
  return std::binary_search(faces_.begin(), faces_.end(), face_rank);
}

Complex Complex::with_face(uint64_t face_rank) const {
  if (contains(face_rank)) return *this;
  std::vector<uint64_t> f = faces_;
  f.push_back(face_rank);
  return Complex(n_, d_, std::move(f));
}

std::string to_json(const Complex& y) {
  nlohmann::json j;
  j["n"] = y.n();
  j["d"] = y.d();
  j["faces"] = y.faces();
  return j.dump();
}

Complex complex_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  return Complex(j.at("n").get<uint32_t>(), j.at("d").get<uint32_t>(),
                 j.at("faces").get<std::vector<uint64_t>>());
}

std::string to_text(const Complex& y) {
  std::ostringstream out;
  out << y.n() << ' ' << y.d() << '\n';
  std::vector<uint32_t> verts(y.d() + 1);
  for (uint64_t r : y.faces()) {
    face_unrank_into(r, y.n(), y.d() + 1, verts);
    for (size_t i = 0; i < verts.size(); ++i)
      out << verts[i] << (i + 1 < verts.size() ? ' ' : '\n');
  }
  return out.str();
}

Complex complex_from_text(std::istream& in) {
  uint32_t n, d;
  if (!(in >> n >> d))
    throw std::runtime_error("complex text: missing 'n d' header");
  std::vector<uint64_t> ranks;
  std::vector<uint32_t> verts(d + 1);
  while (true) {
    bool ok = true;
    for (uint32_t i = 0; i < d + 1; ++i) {
      if (!(in >> verts[i])) {
        ok = false;
        if (i != 0) throw std::runtime_error("complex text: truncated face");
        break;
      }
    }
    if (!ok) break;
    ranks.push_back(face_rank(verts, n));
  }
  return Complex(n, d, std::move(ranks));
}

Complex load_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  int c = in.peek();
  if (c == '{') {
    std::stringstream ss;
    ss << in.rdbuf();
    return complex_from_json(ss.str());
  }
  return complex_from_text(in);
}

void save_complex(const Complex& y, const std::string& path, bool json) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << (json ? to_json(y) : to_text(y));
}

}  // namespace ydsim
