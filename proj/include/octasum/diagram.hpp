#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace octasum {

struct MalformedCode : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAKnot : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonPlanar : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoBasePoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Crossing of a labeled diagram. Pass labels run 1..2c along the knot;
// each crossing carries one over label and one under label, arcs are
// identified with their starting pass: arc l joins passes l and l+1.
struct Crossing {
  int sign = 0;       // epsilon(c)
  int over_label = 0; // pass label of the overpass
  int under_label = 0;

  int label_j() const { return std::min(over_label, under_label); }
  int label_jp() const { return std::max(over_label, under_label); }
  bool j_is_overpass() const { return over_label < under_label; }

  // Arcs by role (arc index = starting pass label, 1-based).
  int over_in = 0, over_out = 0, under_in = 0, under_out = 0;
};

// One corner of a face: the wedge at `crossing` between rotation slots
// `slot` and `slot`+1 (mod 4), slots in PD order (CCW, slot 0 = under-in).
struct FaceCorner {
  int crossing = 0;
  int slot = 0;
};

struct Face {
  std::vector<FaceCorner> corners;
  std::vector<int> boundary_arcs; // arcs along the traversal, same length
};

struct LoopClass {
  int crossing = 0; // crossing id, or 0 for the full knot
  std::vector<int> arcs;
  std::vector<int> winding; // per face
};

struct WritheLinkingReport {
  long under_sign_sum = 0;
  // twice the half-signed sum, kept integer: sum over (j,j') of eps(l)
  long sign_sum = 0;
  long writhe_gamma = 0;
  long twice_linking = 0;
  bool consistent = false;
};

class Diagram {
public:
  // --- construction ---------------------------------------------------
  static Diagram parse_pd(const std::string &text);
  static Diagram parse_gauss(const std::string &text);

  // --- basic data -----------------------------------------------------
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int arc_count() const { return 2 * crossing_count(); }
  const std::vector<Crossing> &crossings() const { return crossings_; }
  const Crossing &crossing(int id) const { return crossings_.at(id); }
  const std::vector<Face> &faces() const { return faces_; }
  int outer_face() const { return outer_face_; }
  void set_outer_face(int f);

  // crossing id and role of pass l (1-based)
  int crossing_of_pass(int l) const { return pass_crossing_.at(pass_index(l)); }
  bool pass_is_over(int l) const { return pass_over_.at(pass_index(l)); }
  int next_pass(int l) const { return l % arc_count() + 1; }

  int writhe() const;

  // Arc rotation numbers of the rectified Morse embedding (state sum
  // extrema bookkeeping); arc l in 1..2c.
  int arc_rotation(int l) const { return arc_rotation_.at(pass_index(l)); }

  // Faces adjacent to arc l when traveling along increasing labels.
  int face_left_of_arc(int l) const { return arc_face_left_.at(pass_index(l)); }
  int face_right_of_arc(int l) const {
    return arc_face_right_.at(pass_index(l));
  }

  // --- operations -----------------------------------------------------
  LoopClass loop_of_crossing(int c_or_zero) const;
  WritheLinkingReport check_writhe_linking_lemma(int crossing_id) const;

  std::string emit_pd() const;
  std::string to_json() const;

private:
  std::vector<Crossing> crossings_;
  // pass data indexed by pass label - 1
  std::vector<int> pass_crossing_;
  std::vector<bool> pass_over_;
  std::vector<Face> faces_;
  int outer_face_ = 0;
  std::vector<int> arc_face_left_, arc_face_right_;
  std::vector<int> arc_rotation_;

  size_t pass_index(int l) const;
  static Diagram from_pd_tuples(const std::vector<std::array<int, 4>> &tuples);
  void build_faces();
  void relabel_from_base();
  void build_morse_rotation();
  std::vector<int> winding_map(const std::vector<int> &loop_arcs) const;
};

// Built-in diagram library (PD text by knot name).
const std::map<std::string, std::string> &knot_library();
Diagram knot(const std::string &name);

} // namespace octasum
