#include "hopf/basis_key.hpp"

#include <stdexcept>

namespace hopf {

namespace {

void putU32(std::string& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<char>((v >> shift) & 0xff));
}

std::uint32_t getU32(const std::string& in, std::size_t pos) {
  if (pos + 4 > in.size()) throw std::invalid_argument("truncated key payload");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v = (v << 8) | static_cast<unsigned char>(in[pos + i]);
  return v;
}

// Offset binary keeps the byte order equal to the numeric order.
void putInt(std::string& out, int v) { putU32(out, static_cast<std::uint32_t>(v) ^ 0x80000000u); }
int getInt(const std::string& in, std::size_t pos) {
  return static_cast<int>(getU32(in, pos) ^ 0x80000000u);
}

}  // namespace

BasisKey unitKey() { return BasisKey(KeyTag::Unit, ""); }

BasisKey laurentKey(int exponent) {
  std::string p;
  putInt(p, exponent);
  return BasisKey(KeyTag::Laurent, std::move(p));
}

int laurentExponent(const BasisKey& key) {
  if (key.tag != KeyTag::Laurent) throw std::invalid_argument("not a Laurent key");
  return getInt(key.payload, 0);
}

// Layout: base tag byte, u32 length, base payload, then (generator, exponent) pairs.
BasisKey deformedKey(const BasisKey& base, const QExponent& exponent) {
  if (base.tag == KeyTag::Deformed) {
    auto [inner, e] = splitDeformedKey(base);
    return deformedKey(inner, addExponents(e, exponent));
  }
  std::string p;
  p.push_back(static_cast<char>(base.tag));
  putU32(p, static_cast<std::uint32_t>(base.payload.size()));
  p += base.payload;
  for (auto [gen, e] : exponent) {
    if (e == 0) continue;
    putInt(p, gen);
    putInt(p, e);
  }
  return BasisKey(KeyTag::Deformed, std::move(p));
}

std::pair<BasisKey, QExponent> splitDeformedKey(const BasisKey& key) {
  if (key.tag != KeyTag::Deformed) return {key, {}};
  const std::string& p = key.payload;
  if (p.empty()) throw std::invalid_argument("empty deformed key");
  auto tag = static_cast<KeyTag>(p[0]);
  std::uint32_t len = getU32(p, 1);
  std::size_t pos = 5;
  if (pos + len > p.size()) throw std::invalid_argument("truncated deformed key");
  BasisKey base(tag, p.substr(pos, len));
  pos += len;
  QExponent e;
  while (pos < p.size()) {
    int gen = getInt(p, pos);
    int ex = getInt(p, pos + 4);
    e[gen] = ex;
    pos += 8;
  }
  return {base, e};
}

QExponent addExponents(QExponent a, const QExponent& b) {
  for (auto [gen, e] : b) {
    int v = (a[gen] += e);
    if (v == 0) a.erase(gen);
  }
  return a;
}

std::string renderQExponent(const QExponent& exponent) {
  std::string out;
  for (auto [gen, e] : exponent) {
    if (e == 0) continue;
    if (!out.empty()) out += ' ';
    out += gen == kSingleParameter ? std::string("q") : "q_" + std::to_string(gen);
    out += '^' + std::to_string(e);
  }
  return out;
}

std::string render(const BasisKey& key) {
  switch (key.tag) {
    case KeyTag::Unit:
      return "1";
    case KeyTag::Laurent:
      return "z^" + std::to_string(laurentExponent(key));
    case KeyTag::Deformed: {
      auto [base, e] = splitDeformedKey(key);
      std::string q = renderQExponent(e);
      bool trivialBase = (base.tag == KeyTag::Unit) ||
                         (base.tag == KeyTag::Forest && base.payload == "1") ||
                         (base.tag == KeyTag::Graph && base.payload == "1");
      if (q.empty()) return render(base);
      if (trivialBase) return q;
      return render(base) + " " + q;
    }
    default:
      return key.payload;
  }
}

}  // namespace hopf
