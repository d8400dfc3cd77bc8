#ifndef DYNMATCH_DETAIL_ARENA_HPP
#define DYNMATCH_DETAIL_ARENA_HPP

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <vector>

namespace dynmatch::detail {

/// Arena of circular doubly linked list cells. A list is named by its
/// sentinel cell; ordinary cells carry a payload and a twin index that
/// owners use to link the two directions of an edge.
class ListPool {
public:
    using Index = std::uint32_t;
    static constexpr Index kNone = std::numeric_limits<Index>::max();

    Index make_list() {
        Index s = allocate();
        cells_[s] = Cell{s, s, 0, kNone};
        return s;
    }

    Index push_back(Index list, std::uint32_t value, Index twin = kNone) {
        Index c = allocate();
        cells_[c].value = value;
        cells_[c].twin = twin;
        link_before(list, c);
        return c;
    }

    // Unlinks the cell and recycles it.
    void erase(Index cell) {
        unlink(cell);
        release(cell);
    }

    // Releases an empty list's sentinel.
    void drop_list(Index list) {
        assert(empty(list));
        release(list);
    }

    void move_back(Index list, Index cell) {
        unlink(cell);
        link_before(list, cell);
    }

    // Moves every cell of `other` to the end of `list`, leaving `other` empty.
    void splice_back(Index list, Index other) {
        if (empty(other)) return;
        Index first = cells_[other].next;
        Index last = cells_[other].prev;
        Index tail = cells_[list].prev;
        cells_[tail].next = first;
        cells_[first].prev = tail;
        cells_[last].next = list;
        cells_[list].prev = last;
        cells_[other].next = other;
        cells_[other].prev = other;
    }

    bool empty(Index list) const { return cells_[list].next == list; }
    Index first(Index list) const { return cells_[list].next; }
    Index next(Index cell) const { return cells_[cell].next; }
    std::uint32_t value(Index cell) const { return cells_[cell].value; }
    Index twin(Index cell) const { return cells_[cell].twin; }
    void set_twin(Index cell, Index twin) { cells_[cell].twin = twin; }

    // Drops every list at once.
    void clear() {
        cells_.clear();
        free_ = kNone;
    }

    std::size_t capacity() const { return cells_.size(); }

private:
    struct Cell {
        Index prev;
        Index next;
        std::uint32_t value;
        Index twin;
    };

    Index allocate() {
        if (free_ != kNone) {
            Index c = free_;
            free_ = cells_[c].next;
            return c;
        }
        cells_.push_back(Cell{kNone, kNone, 0, kNone});
        return static_cast<Index>(cells_.size() - 1);
    }

    void release(Index cell) {
        cells_[cell].prev = kNone;
        cells_[cell].next = free_;
        free_ = cell;
    }

    void unlink(Index cell) {
        Index p = cells_[cell].prev;
        Index n = cells_[cell].next;
        cells_[p].next = n;
        cells_[n].prev = p;
    }

    void link_before(Index anchor, Index cell) {
        Index p = cells_[anchor].prev;
        cells_[cell].prev = p;
        cells_[cell].next = anchor;
        cells_[p].next = cell;
        cells_[anchor].prev = cell;
    }

    std::vector<Cell> cells_;
    Index free_ = kNone;
};

/// Fixed-size array whose entries all revert to a default value on reset()
/// in O(1): an entry is live only if its stamp matches the current generation.
template <class T>
class StampedArray {
public:
    StampedArray() = default;
    StampedArray(std::size_t n, T init) : data_(n, init), stamp_(n, 0), init_(init) {}

    T& at(std::size_t i) {
        if (stamp_[i] != gen_) {
            stamp_[i] = gen_;
            data_[i] = init_;
        }
        return data_[i];
    }

    T get(std::size_t i) const { return stamp_[i] == gen_ ? data_[i] : init_; }
    bool live(std::size_t i) const { return stamp_[i] == gen_; }

    void reset() {
        if (++gen_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            gen_ = 1;
        }
    }

    std::size_t size() const { return data_.size(); }

private:
    std::vector<T> data_;
    std::vector<std::uint32_t> stamp_;
    T init_{};
    std::uint32_t gen_ = 1;
};

} // namespace dynmatch::detail

#endif
