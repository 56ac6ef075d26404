#pragma once

#include <map>
#include <string>
#include <vector>

#include "gda/enumerate.hpp"
#include "gda/linalg.hpp"
#include "gda/relations.hpp"

namespace gda {

enum class Presentation { Stu, Ihx, StuIhx };
std::string to_string(Presentation p);
std::string to_string(Grading g);

struct SpaceOptions {
  Presentation presentation = Presentation::Stu;
  bool framed = false;    // unframed kills adjacent lone chords
  std::string cache_dir;  // empty disables the result cache
  int workers = 1;
};

struct SpaceResult {
  std::string space;
  int degree = 0;
  std::string grading;
  long long basis_size = 0;
  std::map<std::string, long long> relation_counts;
  GradedAbelianGroup group;
  std::map<std::string, std::string> flags;
  long long wall_time_ms = 0;
};

std::string to_json(const SpaceResult& r);
SpaceResult space_result_from_json(const std::string& text);

// Open diagrams modulo orientation and edge-rewiring rows; exact group via
// integer Smith normal form.
SpaceResult compute_B(Grading grading, int degree, const SpaceOptions& opt = {});

// Closed diagrams modulo orientation rows plus the selected presentation.
SpaceResult compute_A(int degree, const SpaceOptions& opt = {});

// compute_A with split classes removed as well.
SpaceResult compute_A_indecomposable(int degree, const SpaceOptions& opt = {});

// compute_A_indecomposable with every class of loop degree >= m killed
// (== m when exact is set).
SpaceResult loop_quotient(int degree, int m, bool exact = false,
                          const SpaceOptions& opt = {});

// Direct sum of loop_quotient(k - j, j) over j = 1 .. k-2.
SpaceResult conjecture_group(int k, const SpaceOptions& opt = {});

// Basis and relation rows behind a space, for export. space is one of
// "B", "Bg", "A", "AI".
struct Assembled {
  Basis basis;
  std::vector<RelationRow> rows;
};
Assembled assemble_space(const std::string& space, int degree,
                         const SpaceOptions& opt = {});

// Rational comparison of the open space with the closed indecomposable
// quotient through the leg-attachment sum. full adds the two spanning
// checks; the rank comparison alone needs no closing sums.
struct ChiCheck {
  long long dim_open = 0;
  long long dim_closed = 0;
  bool ranks_equal = false;
  bool well_defined = false;  // images of open relation rows die
  bool injective = false;     // image dimension matches the open side
  bool full = false;
};
ChiCheck chi_rank_check(int degree, bool full = true,
                        const SpaceOptions& opt = {});

// Circle reversal acts by the parity of the combined degree on each loop
// stratum, modulo relation rows and strictly higher loop degree.
struct ResidualCheck {
  long long checked = 0;
  long long failures = 0;
};
ResidualCheck rho_symmetry_check(int grope_max, const SpaceOptions& opt = {});

// Connected one-leg classes vanish rationally in the quotient.
ResidualCheck one_leg_vanishing(int degree, const SpaceOptions& opt = {});

}  // namespace gda
