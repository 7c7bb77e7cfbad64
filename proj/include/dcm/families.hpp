#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dcm/matching.hpp"

namespace dcm {

enum class Sign : signed char { kMinus = -1, kPlus = 1 };

// Positions of DB-elements, written as a string over {+,-}.
using PositionSequence = std::vector<Sign>;

PositionSequence parse_chi(std::string_view text);
std::string to_string(const PositionSequence& chi);

// Reversed, with every sign changed.
PositionSequence chi_conjugate(const PositionSequence& chi);
int delta(const PositionSequence& chi);

enum class Variant { kRing, kI, kL, kDB, kDBD, kDBDL, kEDB, kEDBL1, kEDBL2 };

std::string_view to_string(Variant v);

struct FamilySpec {
  Variant variant = Variant::kRing;
  int k = 0;
  int j = 0;  // only DBDL, EDB, EDBL1, EDBL2
  PositionSequence chi;
  int z = 1;

  std::string to_string() const;
  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

// Constructors throw std::invalid_argument on parameter range violations.
// Labels go clockwise from z at the leftmost upper point: the upper row left
// to right, then the lower row right to left.
Matching make_db(int k, const PositionSequence& chi, int z);
std::pair<PositionSequence, int> db_partner(int k, const PositionSequence& chi, int z);
Matching make_dbd(int k, const PositionSequence& chi, int z);
Matching make_dbdl(int k, int j, const PositionSequence& chi, int z);
Matching make_edb(int k, int j, const PositionSequence& chi, int z);
std::pair<PositionSequence, int> edb_partner(int k, const PositionSequence& chi, int z);
Matching make_edbl1(int k, int j, const PositionSequence& chi, int z);
Matching make_edbl2(int k, int j, const PositionSequence& chi, int z);
Matching make_family(const FamilySpec& spec);

std::pair<Matching, Matching> rings(int k);

bool is_I(const Matching& m);
bool is_L(const Matching& m);

enum class EdgeColour { kRed, kBlack };

// Throws std::invalid_argument when m is not an I-matching.
std::vector<std::pair<Edge, EdgeColour>> i_coloring(const Matching& m);

// Sorted, duplicate free. Throws std::invalid_argument on a parity mismatch.
std::vector<Matching> generate_family(Variant v, int k);

enum class ClassLabel { kIsolatedI, kPairDB, kMediumDBD, kMediumDBDL, kMediumEDB, kMediumEDBL, kRegular };

std::string_view to_string(ClassLabel label);

struct Classification {
  ClassLabel label = ClassLabel::kRegular;
  // Parameters of the first construction producing the matching, in the
  // sweep order j, then chi (lexicographic with - before +), then z.
  std::optional<FamilySpec> witness;
};

// Lookup tables of every parametrised family for one k, built once and
// shared. Members of several families take the earliest of DB, DBD, DBDL,
// EDB, EDBL1, EDBL2.
class FamilyIndex {
 public:
  static std::shared_ptr<const FamilyIndex> get(int k);

  int k() const noexcept { return k_; }
  const FamilySpec* find(const Matching& m) const;

 private:
  explicit FamilyIndex(int k);

  int k_;
  std::unordered_map<Matching, FamilySpec> members_;
};

Classification classify(const Matching& m);

// Same, reusing an index built for m.size().
Classification classify(const Matching& m, const FamilyIndex& index);

}  // namespace dcm
