#include "sct/character_table.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace sct {

namespace {

using nlohmann::json;

Integer integer_from_json(const json& v, const char* what) {
  if (v.is_number_unsigned()) return Integer(static_cast<unsigned long>(v.get<std::uint64_t>()));
  if (v.is_number_integer()) return Integer(static_cast<long>(v.get<std::int64_t>()));
  if (v.is_string()) {
    try {
      return Integer(v.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  throw TableError(std::string(what) + " must be an integer");
}

std::string cell_name(unsigned i, unsigned j) {
  return "values[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

}  // namespace

CharacterTable CharacterTable::parse(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw TableError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw TableError("table document must be a JSON object");

  CharacterTable t;
  t.name_ = doc.value("name", std::string("unnamed"));

  if (!doc.contains("order")) throw TableError("missing \"order\"");
  t.order_ = integer_from_json(doc.at("order"), "\"order\"");
  if (t.order_ < 1) throw TableError("\"order\" must be positive");

  if (!doc.contains("class_sizes") || !doc.at("class_sizes").is_array()) {
    throw TableError("missing \"class_sizes\" array");
  }
  for (const auto& v : doc.at("class_sizes")) {
    Integer s = integer_from_json(v, "class size");
    if (s < 1) throw TableError("class sizes must be positive");
    t.class_sizes_.push_back(std::move(s));
  }
  t.k_ = static_cast<unsigned>(t.class_sizes_.size());
  if (t.k_ == 0) throw TableError("a table needs at least one class");
  if (t.class_sizes_[0] != 1) {
    throw TableError("column 0 must be the identity class (class_sizes[0] = 1)");
  }

  if (!doc.contains("values") || !doc.at("values").is_array()) {
    throw TableError("missing \"values\" matrix");
  }
  const json& rows = doc.at("values");
  if (rows.size() != t.k_) {
    throw TableError("non-square table: " + std::to_string(rows.size()) + " rows for " +
                     std::to_string(t.k_) + " classes");
  }

  // One fixed field per table: the lcm of every conductor mentioned.
  unsigned long conductor = 1;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != t.k_) {
      throw TableError("non-square table: every row needs exactly " + std::to_string(t.k_) +
                       " entries");
    }
    for (const auto& cell : row) {
      if (cell.is_string()) {
        conductor = std::lcm(conductor, scan_conductor(cell.get<std::string>()));
      }
    }
  }
  t.field_ = CycloField::of(conductor);

  t.values_.reserve(static_cast<std::size_t>(t.k_) * t.k_);
  for (unsigned i = 0; i < t.k_; ++i) {
    for (unsigned j = 0; j < t.k_; ++j) {
      const json& cell = rows[i][j];
      if (cell.is_string()) {
        try {
          t.values_.push_back(parse_cyclotomic(cell.get<std::string>(), t.field_));
        } catch (const CycloError& e) {
          throw TableError(cell_name(i, j) + ": " + e.what());
        }
      } else if (cell.is_number_integer() || cell.is_number_unsigned()) {
        t.values_.emplace_back(t.field_, Rational(integer_from_json(cell, "value")));
      } else {
        throw TableError(cell_name(i, j) + " must be an integer or an expression string");
      }
    }
  }

  const Cyclotomic one(t.field_, Rational(1));
  for (unsigned j = 0; j < t.k_; ++j) {
    if (t.value(0, j) != one) {
      throw TableError("row 0 must be the trivial character; " + cell_name(0, j) + " is " +
                       t.value(0, j).str());
    }
  }
  for (unsigned i = 0; i < t.k_; ++i) {
    const std::optional<Rational> deg = t.value(i, 0).as_rational();
    if (!deg || !is_integer(*deg) || *deg < 1) {
      throw TableError("column 0 must hold the character degrees; " + cell_name(i, 0) + " is " +
                       t.value(i, 0).str());
    }
    t.degrees_.push_back(deg->get_num());
  }

  if (doc.contains("classes")) {
    const json& names = doc.at("classes");
    if (!names.is_array() || names.size() != t.k_) {
      throw TableError("\"classes\" must list one name per class");
    }
    for (const auto& n : names) t.class_names_.push_back(n.get<std::string>());
  }
  if (doc.contains("characters")) {
    const json& names = doc.at("characters");
    if (!names.is_array() || names.size() != t.k_) {
      throw TableError("\"characters\" must list one name per character");
    }
    for (const auto& n : names) t.character_names_.push_back(n.get<std::string>());
  }
  if (doc.contains("power_maps")) {
    const json& pm = doc.at("power_maps");
    if (!pm.is_object()) throw TableError("\"power_maps\" must be an object keyed by primes");
    for (const auto& [key, arr] : pm.items()) {
      unsigned long p = 0;
      try {
        p = std::stoul(key);
      } catch (...) {
        throw TableError("power map key is not a prime: " + key);
      }
      if (!arr.is_array() || arr.size() != t.k_) {
        throw TableError("power map for " + key + " must list one class per class");
      }
      std::vector<unsigned> map;
      for (const auto& v : arr) {
        const Integer idx = integer_from_json(v, "power map entry");
        if (idx < 0 || idx >= static_cast<long>(t.k_)) {
          throw TableError("power map entry out of range for " + key);
        }
        map.push_back(static_cast<unsigned>(idx.get_ui()));
      }
      t.power_maps_.emplace(static_cast<unsigned>(p), std::move(map));
    }
  }

  t.build_caches();
  return t;
}

CharacterTable CharacterTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open table file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void CharacterTable::build_caches() {
  omega_summands_.reserve(values_.size());
  sigma_summands_.reserve(values_.size());
  for (unsigned i = 0; i < k_; ++i) {
    for (unsigned j = 0; j < k_; ++j) {
      Rational omega_scale(class_sizes_[j], degrees_[i]);
      omega_scale.canonicalize();
      omega_summands_.push_back(value(i, j).scaled(omega_scale));
      sigma_summands_.push_back(value(i, j).scaled(Rational(degrees_[i])));
    }
  }
}

ValidationReport CharacterTable::validate() const {
  ValidationReport report;
  auto fail = [&](std::string msg) { report.failures.push_back(std::move(msg)); };

  Integer size_sum = 0;
  for (const Integer& s : class_sizes_) size_sum += s;
  if (size_sum != order_) {
    fail("class sizes sum to " + to_string(size_sum) + ", expected the group order " +
         to_string(order_));
  }

  Integer degree_square_sum = 0;
  for (const Integer& d : degrees_) degree_square_sum += d * d;
  if (degree_square_sum != order_) {
    fail("degree squares sum to " + to_string(degree_square_sum) + ", expected " +
         to_string(order_));
  }

  // Row orthogonality: sum_j |C_j| chi_i(j) conj(chi_i'(j)) = delta |G|.
  std::vector<Cyclotomic> conj_values(values_.size(), Cyclotomic(field_));
  for (unsigned i = 0; i < k_; ++i) {
    for (unsigned j = 0; j < k_; ++j) conj_values[i * k_ + j] = value(i, j).conjugate();
  }
  for (unsigned i = 0; i < k_; ++i) {
    for (unsigned i2 = i; i2 < k_; ++i2) {
      Cyclotomic sum(field_);
      for (unsigned j = 0; j < k_; ++j) {
        sum += (value(i, j) * conj_values[i2 * k_ + j]).scaled(Rational(class_sizes_[j]));
      }
      const Cyclotomic expect(field_, i == i2 ? Rational(order_) : Rational(0));
      if (sum != expect) {
        fail("row orthogonality fails for characters (" + std::to_string(i) + "," +
             std::to_string(i2) + "): got " + sum.str());
      }
    }
  }

  // Column orthogonality: sum_i chi_i(j) conj(chi_i(j')) = delta |G|/|C_j|.
  for (unsigned j = 0; j < k_; ++j) {
    for (unsigned j2 = j; j2 < k_; ++j2) {
      Cyclotomic sum(field_);
      for (unsigned i = 0; i < k_; ++i) {
        sum += value(i, j) * conj_values[i * k_ + j2];
      }
      Cyclotomic expect(field_);
      if (j == j2) {
        Rational q(order_, class_sizes_[j]);
        q.canonicalize();
        expect = Cyclotomic(field_, q);
      }
      if (sum != expect) {
        fail("column orthogonality fails for classes (" + std::to_string(j) + "," +
             std::to_string(j2) + "): got " + sum.str());
      }
    }
  }

  try {
    const std::vector<unsigned> inv = inverse_class_perm();
    for (unsigned j = 0; j < k_; ++j) {
      if (inv[inv[j]] != j) {
        fail("inverse-class map is not an involution at class " + std::to_string(j));
      }
    }
    if (inv[0] != 0) fail("inverse-class map moves the identity class");
  } catch (const TableError& e) {
    fail(e.what());
  }

  return report;
}

std::vector<unsigned> CharacterTable::inverse_class_perm() const {
  std::vector<unsigned> perm(k_, 0);
  for (unsigned j = 0; j < k_; ++j) {
    bool found = false;
    for (unsigned j2 = 0; j2 < k_ && !found; ++j2) {
      bool all = true;
      for (unsigned i = 0; i < k_ && all; ++i) {
        all = value(i, j2) == value(i, j).conjugate();
      }
      if (all) {
        perm[j] = j2;
        found = true;
      }
    }
    if (!found) {
      throw TableError("no column matches the conjugate of class " + std::to_string(j) +
                       " (not a character table)");
    }
  }
  return perm;
}

const Rational& CharacterTable::structure_constant(unsigned i, unsigned j, unsigned l) const {
  std::call_once(tensor_->once, [this] {
    std::vector<Rational>& tensor = tensor_->data;
    tensor.assign(static_cast<std::size_t>(k_) * k_ * k_, Rational(0));
    std::vector<Cyclotomic> conj_values(values_.size(), Cyclotomic(field_));
    for (unsigned a = 0; a < k_; ++a) {
      for (unsigned b = 0; b < k_; ++b) conj_values[a * k_ + b] = value(a, b).conjugate();
    }
    for (unsigned a = 0; a < k_; ++a) {
      for (unsigned b = 0; b < k_; ++b) {
        Rational scale(class_sizes_[a] * class_sizes_[b], order_);
        scale.canonicalize();
        std::vector<Cyclotomic> row_terms;
        row_terms.reserve(k_);
        for (unsigned x = 0; x < k_; ++x) {
          Rational s = scale / Rational(degrees_[x]);
          s.canonicalize();
          row_terms.push_back((value(x, a) * value(x, b)).scaled(s));
        }
        for (unsigned c = 0; c < k_; ++c) {
          Cyclotomic sum(field_);
          for (unsigned x = 0; x < k_; ++x) {
            sum += row_terms[x] * conj_values[x * k_ + c];
          }
          const std::optional<Rational> q = sum.as_rational();
          if (!q) {
            throw TableError("irrational structure constant at (" + std::to_string(a) + "," +
                             std::to_string(b) + "," + std::to_string(c) +
                             "): not a character table");
          }
          tensor[(static_cast<std::size_t>(a) * k_ + b) * k_ + c] = *q;
        }
      }
    }
  });
  return tensor_->data[(static_cast<std::size_t>(i) * k_ + j) * k_ + l];
}

Cyclotomic CharacterTable::central_character_value(unsigned i, const IndexSet& classes) const {
  Cyclotomic sum(field_);
  classes.for_each([&](unsigned j) { sum += omega_summand(i, j); });
  return sum;
}

}  // namespace sct
