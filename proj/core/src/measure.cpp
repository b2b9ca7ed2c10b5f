#include "confdim/measure.hpp"

#include <algorithm>
#include <fstream>

namespace confdim {

namespace {

constexpr int kMaxDensityDepth = 8;
constexpr long long kMaxBlockSpan = 1024;

Rational pow4_inv(int n) {
  Integer d;
  mpz_ui_pow_ui(d.get_mpz_t(), 4, static_cast<unsigned long>(n));
  Rational q(1, d);
  q.canonicalize();
  return q;
}

[[noreturn]] void reject(const std::string& msg) { throw MeasureParseError(msg); }

void check_known_fields(const nlohmann::json& obj, std::initializer_list<const char*> allowed,
                        const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return it.key() == k; }) == allowed.end())
      reject("unknown field '" + it.key() + "' in " + where);
  }
}

Rational field_rational(const nlohmann::json& v, const std::string& what) {
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
  if (v.is_string()) {
    auto q = parse_rational(v.get<std::string>());
    if (q) return *q;
  }
  reject("malformed rational for " + what);
}

} // namespace

const char* variant_name(MeasureVariant v) {
  switch (v) {
    case MeasureVariant::atomic: return "atomic";
    case MeasureVariant::density: return "density";
    case MeasureVariant::bernoulli4: return "bernoulli4";
    case MeasureVariant::lebesgue: return "lebesgue";
  }
  return "?";
}

MeasureSpec parse_measure_spec(const nlohmann::json& doc) {
  if (!doc.is_object()) reject("measure spec must be a JSON object");
  check_known_fields(doc, {"variant", "blocks", "atoms", "density", "bernoulli4"}, "measure spec");

  MeasureSpec spec;
  if (!doc.contains("variant") || !doc["variant"].is_string())
    reject("missing or non-string 'variant'");
  std::string var = doc["variant"].get<std::string>();
  if (var == "atomic") spec.variant = MeasureVariant::atomic;
  else if (var == "density") spec.variant = MeasureVariant::density;
  else if (var == "bernoulli4") spec.variant = MeasureVariant::bernoulli4;
  else if (var == "lebesgue") spec.variant = MeasureVariant::lebesgue;
  else reject("unknown variant '" + var + "'");

  if (!doc.contains("blocks") || !doc["blocks"].is_array() || doc["blocks"].size() != 2 ||
      !doc["blocks"][0].is_number_integer() || !doc["blocks"][1].is_number_integer())
    reject("'blocks' must be [lo, hi] with integer bounds");
  spec.block_lo = doc["blocks"][0].get<long long>();
  spec.block_hi = doc["blocks"][1].get<long long>();
  if (spec.block_lo > spec.block_hi) reject("'blocks' range is empty");
  if (spec.block_hi - spec.block_lo + 1 > kMaxBlockSpan)
    reject("'blocks' range too wide (limit " + std::to_string(kMaxBlockSpan) + ")");

  switch (spec.variant) {
    case MeasureVariant::lebesgue:
      if (doc.contains("atoms") || doc.contains("density") || doc.contains("bernoulli4"))
        reject("lebesgue takes no variant payload");
      break;

    case MeasureVariant::atomic: {
      if (!doc.contains("atoms") || !doc["atoms"].is_array())
        reject("atomic requires an 'atoms' array");
      for (const auto& a : doc["atoms"]) {
        if (!a.is_object()) reject("atom entries must be objects");
        check_known_fields(a, {"position", "weight"}, "atom");
        if (!a.contains("position") || !a.contains("weight"))
          reject("atom requires 'position' and 'weight'");
        Atom atom{field_rational(a["position"], "atom position"),
                  field_rational(a["weight"], "atom weight")};
        if (atom.weight <= 0) reject("atom weights must be positive");
        if (atom.position < static_cast<long>(spec.block_lo) ||
            atom.position >= static_cast<long>(spec.block_hi) + 1)
          reject("atom at " + to_fraction_string(atom.position) + " outside covered blocks");
        spec.atoms.push_back(std::move(atom));
      }
      std::sort(spec.atoms.begin(), spec.atoms.end(),
                [](const Atom& x, const Atom& y) { return x.position < y.position; });
      // merge duplicates
      std::vector<Atom> merged;
      for (auto& a : spec.atoms) {
        if (!merged.empty() && merged.back().position == a.position)
          merged.back().weight += a.weight;
        else
          merged.push_back(std::move(a));
      }
      spec.atoms = std::move(merged);
      break;
    }

    case MeasureVariant::density: {
      if (!doc.contains("density") || !doc["density"].is_object())
        reject("density requires a 'density' object");
      const auto& d = doc["density"];
      check_known_fields(d, {"base_depth", "cells"}, "density");
      if (!d.contains("base_depth") || !d["base_depth"].is_number_integer())
        reject("density requires integer 'base_depth'");
      spec.density_base_depth = d["base_depth"].get<int>();
      if (spec.density_base_depth < 0 || spec.density_base_depth > kMaxDensityDepth)
        reject("'base_depth' must be in 0.." + std::to_string(kMaxDensityDepth));
      std::size_t cells_per_block = std::size_t{1} << (2 * spec.density_base_depth);
      if (!d.contains("cells") || !d["cells"].is_object())
        reject("density requires a 'cells' object keyed by block");
      for (auto it = d["cells"].begin(); it != d["cells"].end(); ++it) {
        long long blk;
        try {
          blk = std::stoll(it.key());
        } catch (...) {
          reject("density cell key '" + it.key() + "' is not a block number");
        }
        if (blk < spec.block_lo || blk > spec.block_hi)
          reject("density cells given for uncovered block " + std::to_string(blk));
        if (!it.value().is_array() || it.value().size() != cells_per_block)
          reject("block " + std::to_string(blk) + " needs exactly " +
                 std::to_string(cells_per_block) + " cell weights");
        std::vector<Rational> w;
        w.reserve(cells_per_block);
        for (const auto& c : it.value()) {
          Rational q = field_rational(c, "density cell weight");
          if (q < 0) reject("weights must be non-negative");
          w.push_back(std::move(q));
        }
        spec.density_cells.emplace(blk, std::move(w));
      }
      for (long long blk = spec.block_lo; blk <= spec.block_hi; ++blk)
        if (!spec.density_cells.count(blk))
          reject("density cells missing for covered block " + std::to_string(blk));
      break;
    }

    case MeasureVariant::bernoulli4: {
      if (!doc.contains("bernoulli4") || !doc["bernoulli4"].is_object())
        reject("bernoulli4 requires a 'bernoulli4' object");
      const auto& b = doc["bernoulli4"];
      check_known_fields(b, {"mass", "p"}, "bernoulli4");
      if (!b.contains("mass") || !b.contains("p")) reject("bernoulli4 requires 'mass' and 'p'");
      spec.bern_mass = field_rational(b["mass"], "bernoulli4 mass");
      if (spec.bern_mass <= 0) reject("bernoulli4 mass must be positive");
      if (!b["p"].is_array() || b["p"].size() != 4)
        reject("bernoulli4 'p' must have four entries");
      Rational sum = 0;
      for (int i = 0; i < 4; ++i) {
        spec.bern_p[i] = field_rational(b["p"][i], "bernoulli4 probability");
        if (spec.bern_p[i] < 0) reject("weights must be non-negative");
        sum += spec.bern_p[i];
      }
      if (sum != 1) reject("probabilities must sum to 1");
      break;
    }
  }
  return spec;
}

MeasureSpec load_measure_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) reject("cannot open measure spec file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    reject("malformed JSON in " + path + ": " + e.what());
  }
  return parse_measure_spec(doc);
}

nlohmann::json measure_spec_to_json(const MeasureSpec& spec) {
  nlohmann::json doc;
  doc["variant"] = variant_name(spec.variant);
  doc["blocks"] = {spec.block_lo, spec.block_hi};
  switch (spec.variant) {
    case MeasureVariant::lebesgue:
      break;
    case MeasureVariant::atomic: {
      auto arr = nlohmann::json::array();
      for (const auto& a : spec.atoms)
        arr.push_back({{"position", to_fraction_string(a.position)},
                       {"weight", to_fraction_string(a.weight)}});
      doc["atoms"] = std::move(arr);
      break;
    }
    case MeasureVariant::density: {
      nlohmann::json cells = nlohmann::json::object();
      for (const auto& [blk, w] : spec.density_cells) {
        auto arr = nlohmann::json::array();
        for (const auto& q : w) arr.push_back(to_fraction_string(q));
        cells[std::to_string(blk)] = std::move(arr);
      }
      doc["density"] = {{"base_depth", spec.density_base_depth}, {"cells", std::move(cells)}};
      break;
    }
    case MeasureVariant::bernoulli4: {
      auto arr = nlohmann::json::array();
      for (const auto& p : spec.bern_p) arr.push_back(to_fraction_string(p));
      doc["bernoulli4"] = {{"mass", to_fraction_string(spec.bern_mass)}, {"p", std::move(arr)}};
      break;
    }
  }
  return doc;
}

MeasureOracle::MeasureOracle(MeasureSpec spec) : spec_(std::move(spec)) {}

bool MeasureOracle::covers(long long block) const {
  return block >= spec_.block_lo && block <= spec_.block_hi;
}

void MeasureOracle::require_covered(long long block) const {
  if (!covers(block))
    throw std::out_of_range("block " + std::to_string(block) + " outside covered range [" +
                            std::to_string(spec_.block_lo) + ", " +
                            std::to_string(spec_.block_hi) + "]");
}

Rational MeasureOracle::mass(const FourAryInterval& iv) const {
  require_covered(iv.block);
  switch (spec_.variant) {
    case MeasureVariant::lebesgue:
      return pow4_inv(iv.depth);

    case MeasureVariant::atomic: {
      Rational lo = left_endpoint(iv), hi = right_endpoint(iv);
      auto first = std::lower_bound(
          spec_.atoms.begin(), spec_.atoms.end(), lo,
          [](const Atom& a, const Rational& v) { return a.position < v; });
      Rational sum = 0;
      for (auto it = first; it != spec_.atoms.end() && it->position < hi; ++it)
        sum += it->weight;
      return sum;
    }

    case MeasureVariant::bernoulli4: {
      Rational m = spec_.bern_mass;
      for (int j = 1; j <= iv.depth; ++j) {
        int d = path_digit(iv, j);
        if (spec_.bern_p[d] == 0) return Rational(0);
        m *= spec_.bern_p[d];
      }
      return m;
    }

    case MeasureVariant::density: {
      const auto& w = spec_.density_cells.at(iv.block);
      int d = spec_.density_base_depth;
      if (iv.depth >= d) {
        std::uint64_t cell = iv.index >> (2 * (iv.depth - d));
        return w[cell] * pow4_inv(iv.depth - d);
      }
      std::uint64_t first = iv.index << (2 * (d - iv.depth));
      std::uint64_t span = std::uint64_t{1} << (2 * (d - iv.depth));
      Rational sum = 0;
      for (std::uint64_t c = first; c < first + span; ++c) sum += w[c];
      return sum;
    }
  }
  return Rational(0);
}

Rational MeasureOracle::block_mass(long long block) const {
  return mass({block, 0, 0});
}

MeasureOracle::TailInfo MeasureOracle::tail_at(const FourAryInterval& iv) const {
  require_covered(iv.block);
  TailInfo info;
  switch (spec_.variant) {
    case MeasureVariant::lebesgue:
      info.kind = MeasureTail::uniform;
      return info;

    case MeasureVariant::bernoulli4: {
      for (int j = 1; j <= iv.depth; ++j)
        if (spec_.bern_p[path_digit(iv, j)] == 0) {
          info.kind = MeasureTail::null_set;
          return info;
        }
      info.kind = MeasureTail::bernoulli;
      return info;
    }

    case MeasureVariant::density: {
      if (mass(iv) == 0) {
        info.kind = MeasureTail::null_set;
        return info;
      }
      info.kind = iv.depth >= spec_.density_base_depth ? MeasureTail::uniform : MeasureTail::none;
      return info;
    }

    case MeasureVariant::atomic: {
      Rational lo = left_endpoint(iv), hi = right_endpoint(iv);
      auto first = std::lower_bound(
          spec_.atoms.begin(), spec_.atoms.end(), lo,
          [](const Atom& a, const Rational& v) { return a.position < v; });
      auto last = first;
      while (last != spec_.atoms.end() && last->position < hi) ++last;
      auto count = last - first;
      if (count == 0) {
        info.kind = MeasureTail::null_set;
      } else if (count == 1) {
        info.kind = MeasureTail::point_mass;
        info.atom_offset = (first->position - lo) / width(iv);
        info.atom_weight = first->weight;
      } else {
        info.kind = MeasureTail::none;
      }
      return info;
    }
  }
  return info;
}

} // namespace confdim
