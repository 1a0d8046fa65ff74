#include "diophlab/util.hpp"

#include <iomanip>
#include <sstream>

namespace diophlab {

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

Rng Rng::fork(const std::string& name) const {
    std::mt19937_64 copy = gen_;
    const std::uint64_t a = copy();
    Rng child(a ^ fnv1a(name));
    return child;
}

int cmp_vec(const IntVector& a, const IntVector& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] < b[i]) return -1;
        if (a[i] > b[i]) return 1;
    }
    if (a.size() < b.size()) return -1;
    if (a.size() > b.size()) return 1;
    return 0;
}

std::string version_string() { return "diophlab 0.1.0"; }

} // namespace diophlab
