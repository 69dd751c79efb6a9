#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "algparity/brauer.hpp"
#include "algparity/glattice.hpp"
#include "algparity/instance_gen.hpp"
#include "algparity/pgroup.hpp"

namespace algparity {

// Object keys keep insertion order so written files read naturally and are
// byte-for-byte reproducible.
using Json = nlohmann::ordered_json;

// Integers are decimal strings; plain JSON integers are accepted on input.
Json to_json(const Integer& value);
Integer integer_from_json(const Json& j);
// {"num": "...", "den": "..."}; a bare integer is accepted on input.
Json to_json(const Rational& value);
Rational rational_from_json(const Json& j);

// {"rows": r, "cols": c, "entries": [[...], ...]}
Json to_json(const IntMatrix& m);
IntMatrix int_matrix_from_json(const Json& j);
Json to_json(const RatMatrix& m);
RatMatrix rat_matrix_from_json(const Json& j);

Json to_json(const FiniteAbelianGroup& g);
Json to_json(const AbelianGroup& g);

// {"p": "3", "exponents": [2, 1], "action": IntMatrix}
Json to_json(const PGroupAutInstance& inst);
PGroupAutInstance pgroup_from_json(const Json& j);

// {"n": 3, "sigma": IntMatrix} with an optional "gram".
Json to_json(const GLattice& lattice);
GLattice glattice_from_json(const Json& j);
Json to_json(const PairedGLattice& lattice);
PairedGLattice paired_lattice_from_json(const Json& j);

// {"n": 3, "source": {"sigma", "gram"}, "target": {...}, "phi", "phi_t"}.
// When "phi_t" is missing on input it is computed and must be integral.
Json to_json(const PairedIsogeny& pair);
PairedIsogeny paired_isogeny_from_json(const Json& j);
// The same layout without pairings: {"n", "source": {"sigma"}, "target", "phi"}.
LatticeIsogeny isogeny_from_json(const Json& j);

Json to_json(const Cohomology& c);
Json to_json(const Discriminant& d);
Json to_json(const DiscriminantTerms& t);
Json to_json(const Lemma32Report& r);
Json to_json(const Prop35Report& r);
Json to_json(const GenStats& s);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

// ---------------------------------------------------------------------------
// group data files
//
// {
//   "name": "S3",
//   "version": 1,
//   "generators": [[1, 0, 2], [1, 2, 0]],
//   "subgroups": [{"name": "C2", "generators": [[1, 0, 2]]}, ...],   optional
//   "representations": [
//     {"name": "standard", "generators": [RatMatrix, ...], "gram": RatMatrix}, ...
//   ]
// }
//
// Permutations are 0-based image lists. Representation matrices use
// {"num", "den"} entries; "gram" is optional and defaults to the averaged
// standard form.

struct GroupData {
  FiniteGroup group;
  std::vector<RationalRep> representations;
};

GroupData group_data_from_json(const Json& j);
GroupData load_group_data(const std::filesystem::path& path);
// Directory holding groups/<name>.json, fixed at build time.
std::filesystem::path default_data_dir();
// Resolves a built-in group name (or a path to a data file) and loads it.
GroupData load_group(const std::string& name_or_path, const std::filesystem::path& data_dir = default_data_dir());
std::vector<std::string> builtin_group_names(const std::filesystem::path& data_dir = default_data_dir());

Json to_json(const FiniteGroup& group, const BrauerRelation& theta);
BrauerRelation relation_from_json(const FiniteGroup& group, const Json& j);
Json to_json(const FiniteGroup& group, const Realization& r);
Json to_json(const TauResult& r);

}  // namespace algparity
