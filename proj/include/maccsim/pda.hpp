#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace maccsim {

// Index conventions used across the library:
//  * grid accessors take 0-based (row, col) positions;
//  * values carried in the data are 1-based: label ids live in [1..S], column
//    ids recorded in star sets live in [1..K], subset elements in [1..K],
//    vector coordinates in [1..q].

// One cell of a placement delivery array: either the cached marker "*" or a
// multicast label in [1..S].
class PdaEntry {
  public:
    static PdaEntry star() { return PdaEntry(0); }
    static PdaEntry label(int id) { return PdaEntry(id); }

    bool is_star() const { return v_ == 0; }
    int label_id() const { return v_; }  // 0 means star

    bool operator==(const PdaEntry&) const = default;

  private:
    explicit PdaEntry(int v) : v_(v) {}
    int v_;
};

// How the rows of an array are indexed semantically, in addition to their
// position: MN arrays index rows by t-subsets, Partition arrays by vectors
// over [q].
enum class RowTagKind { None, Subset, Vector };

struct PdaArray {
    int rows = 0;
    int cols = 0;
    // Stars per column as declared by the construction. Delivery arrays of
    // MACC schemes are star/label grids with no uniform column count; they
    // carry no Z.
    std::optional<int> z;
    int s = 0;  // number of distinct labels

    std::vector<PdaEntry> cells;  // row-major, rows*cols

    RowTagKind row_tag_kind = RowTagKind::None;
    std::vector<std::vector<int>> row_tags;  // one per row when tagged

    PdaArray() = default;
    PdaArray(int rows_, int cols_, std::optional<int> z_, int s_)
        : rows(rows_), cols(cols_), z(z_), s(s_),
          cells(static_cast<size_t>(rows_) * cols_, PdaEntry::star()) {}

    PdaEntry at(int row, int col) const { return cells[static_cast<size_t>(row) * cols + col]; }
    void set(int row, int col, PdaEntry e) { cells[static_cast<size_t>(row) * cols + col] = e; }

    // 1-based column ids of the stars in a row, ascending.
    std::vector<int> row_star_cols(int row) const;
    // 1-based column ids of the non-star cells in a row, ascending.
    std::vector<int> row_label_cols(int row) const;

    bool operator==(const PdaArray&) const = default;
};

// Tagged location of a failed condition; `cells` holds the witnessing
// (row, col) pairs, 0-based.
struct PdaViolation {
    char condition;  // '1'..'5'
    std::string detail;
    std::vector<std::pair<int, int>> cells;
};

struct PdaReport {
    bool c1_ok = false;
    bool c2_ok = false;
    bool c3_ok = false;
    std::optional<bool> c4_ok;  // set when t was supplied
    std::optional<bool> c5_ok;  // set when t and L were supplied
    std::map<int, int> gain_histogram;  // label multiplicity -> number of labels
    std::vector<PdaViolation> violations;

    bool all_ok() const {
        return c1_ok && c2_ok && c3_ok && c4_ok.value_or(true) && c5_ok.value_or(true);
    }
};

// The m sub-arrays of a Partition PDA over one shared label space, plus the
// vector meaning of every integer label.
struct PartitionFamily {
    int q = 0;  // columns per sub-array
    int z = 0;  // star run length, 0 < z < q
    int m = 0;  // number of sub-arrays

    std::vector<PdaArray> sub_arrays;  // m arrays, each q^m x q
    // label_vectors[i] is the (m+1)-vector mapped to label i+1; coordinates
    // 1..m lie in [1..q], the last one in [1..q-z].
    std::vector<std::vector<int>> label_vectors;

    int label_of_vector(const std::vector<int>& v) const;
    // Tag star of sub-array i0 (0-based) in row r0: its 1-based column f_i.
    int tag_star_col(int sub, int row) const { return sub_arrays[sub].row_tags[row][sub]; }

    // Sub-arrays stacked side by side: an m-(mq, q^m, z q^{m-1}, q^m (q-z)) PDA.
    PdaArray combined() const;
};

// MN array for K users at cache fraction t/K: rows are the t-subsets of [1..K]
// in lexicographic order, entry (T,k) is a star iff k is in T and otherwise
// the rank of T+{k} among the (t+1)-subsets. t = 0 yields the single-row
// array of labels 1..K; t = K the all-star column.
PdaArray mn_pda(int K, int t);

// Partition construction: sub-array i has a star at (f, k) iff k lies in the
// z-run starting at f_i; other cells get the vector with coordinate i
// replaced by k and <f_i - k>_q appended, mapped to an integer label.
PartitionFamily partition_pda(int q, int z, int m);

// Checks C1-C3 always; C4 when t is given; C5 when t and L are given (C5
// needs the run geometry of the K = cols + t(L-1) node line).
PdaReport verify_pda(const PdaArray& p, std::optional<int> t = std::nullopt,
                     std::optional<int> L = std::nullopt);

// Label id -> multiplicity; the multiplicity of s is the coded caching gain
// of message s.
std::map<int, int> gain_profile(const PdaArray& p);

}  // namespace maccsim
