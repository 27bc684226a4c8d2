#include "qfermat/ntheory/prime_set.hpp"

#include "qfermat/ntheory/factor.hpp"

#include <algorithm>
#include <sstream>

namespace qfermat {

namespace {

void drop_covered(std::set<Integer>& primes, const std::optional<Integer>& tail) {
    if (!tail) return;
    primes.erase(primes.upper_bound(*tail), primes.end());
}

}  // namespace

PrimeSet::PrimeSet(std::initializer_list<long> primes) {
    for (long p : primes) primes_.insert(Integer(p));
}

PrimeSet PrimeSet::all() {
    PrimeSet s;
    s.all_ = true;
    return s;
}

PrimeSet PrimeSet::with_tail_above(std::set<Integer> primes, const Integer& bound) {
    PrimeSet s(std::move(primes));
    s.tail_ = bound;
    drop_covered(s.primes_, s.tail_);
    return s;
}

bool PrimeSet::contains(const Integer& p) const {
    if (all_) return true;
    if (tail_ && p > *tail_) return true;
    return primes_.count(p) != 0;
}

void PrimeSet::insert(const Integer& p) {
    if (contains(p)) return;
    primes_.insert(p);
}

PrimeSet PrimeSet::intersect(const PrimeSet& other) const {
    if (all_) return other;
    if (other.all_) return *this;
    PrimeSet out;
    if (tail_ && other.tail_) out.tail_ = std::max(*tail_, *other.tail_);
    for (const auto& p : primes_)
        if (other.contains(p)) out.primes_.insert(p);
    for (const auto& p : other.primes_)
        if (contains(p)) out.primes_.insert(p);
    drop_covered(out.primes_, out.tail_);
    return out;
}

PrimeSet PrimeSet::unite(const PrimeSet& other) const {
    if (all_ || other.all_) return all();
    PrimeSet out;
    if (tail_ && other.tail_) {
        out.tail_ = std::min(*tail_, *other.tail_);
    } else {
        out.tail_ = tail_ ? tail_ : other.tail_;
    }
    out.primes_ = primes_;
    out.primes_.insert(other.primes_.begin(), other.primes_.end());
    drop_covered(out.primes_, out.tail_);
    return out;
}

PrimeSet PrimeSet::at_least(const Integer& lower) const {
    const Integer floor = lower - 1;
    if (all_) return with_tail_above({}, floor);
    PrimeSet out;
    out.primes_.insert(primes_.lower_bound(lower), primes_.end());
    if (tail_) out.tail_ = std::max(*tail_, floor);
    drop_covered(out.primes_, out.tail_);
    return out;
}

std::set<Integer> PrimeSet::members_below(const Integer& upper) const {
    std::set<Integer> out(primes_.begin(), primes_.lower_bound(upper));
    if (all_ || tail_) {
        Integer p = all_ ? Integer(2) : Integer(*tail_ + 1);
        for (; p < upper; ++p)
            if (is_probable_prime(p)) out.insert(p);
    }
    return out;
}

bool PrimeSet::subset_of(const PrimeSet& other) const {
    if (other.all_) return true;
    if (all_) return false;
    if (tail_) {
        if (!other.tail_) return false;
        if (*other.tail_ > *tail_) {
            // Every prime in (tail, other.tail] would have to be listed in other.
            if (*other.tail_ - *tail_ > 1'000'000) return false;
            for (Integer p = *tail_ + 1; p <= *other.tail_; ++p)
                if (is_probable_prime(p) && !other.contains(p)) return false;
        }
    }
    return std::all_of(primes_.begin(), primes_.end(), [&](const Integer& p) { return other.contains(p); });
}

bool operator==(const PrimeSet& a, const PrimeSet& b) {
    return a.all_ == b.all_ && a.tail_ == b.tail_ && a.primes_ == b.primes_;
}

std::string PrimeSet::to_string() const {
    if (all_) return "ALL";
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& p : primes_) {
        if (!first) os << ", ";
        os << p.get_str();
        first = false;
    }
    os << '}';
    if (tail_) os << " + all primes > " << tail_->get_str();
    return os.str();
}

}  // namespace qfermat
