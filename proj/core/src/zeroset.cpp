#include "flab/zeroset.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "flab/complex_format.hpp"
#include "flab/cutplane.hpp"
#include "flab/errors.hpp"

namespace flab {

void ZeroSet::add(Complex location, int multiplicity, double merge_tol) {
    if (multiplicity < 1) throw ConfigError("zero multiplicity must be >= 1");
    if (!off_cut(location))
        throw ConfigError("zero at " + format_complex(location) +
                          " lies on the cut or inside its guard band");

    bool merged = false;
    if (merge_tol > 0.0) {
        for (Zero& z : entries_) {
            if (std::abs(z.location - location) <= merge_tol) {
                double total = static_cast<double>(z.multiplicity + multiplicity);
                z.location = (z.location * static_cast<double>(z.multiplicity) +
                              location * static_cast<double>(multiplicity)) / total;
                z.multiplicity += multiplicity;
                merged = true;
                break;
            }
        }
    }
    if (!merged) entries_.push_back(Zero{location, multiplicity});
    std::sort(entries_.begin(), entries_.end(), [](const Zero& a, const Zero& b) {
        if (a.location.real() != b.location.real())
            return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
}

int ZeroSet::total_multiplicity() const noexcept {
    int total = 0;
    for (const Zero& z : entries_) total += z.multiplicity;
    return total;
}

void ZeroSet::to_csv(std::ostream& os) const {
    os << "re,im,multiplicity\n";
    for (const Zero& z : entries_) {
        os << format_real(z.location.real()) << ','
           << format_real(z.location.imag()) << ','
           << z.multiplicity << '\n';
    }
}

ZeroSet ZeroSet::from_csv(std::istream& is) {
    ZeroSet zs;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (lineno == 1) {
            if (line != "re,im,multiplicity")
                throw ConfigError("zeros CSV line 1: expected header "
                                  "\"re,im,multiplicity\"");
            continue;
        }
        std::istringstream ss(line);
        std::string re_s, im_s, mult_s;
        if (!std::getline(ss, re_s, ',') || !std::getline(ss, im_s, ',') ||
            !std::getline(ss, mult_s))
            throw ConfigError("zeros CSV line " + std::to_string(lineno) +
                              ": expected re,im,multiplicity");
        try {
            double re = parse_real(re_s);
            double im = parse_real(im_s);
            double mult = parse_real(mult_s);
            if (mult != static_cast<int>(mult) || mult < 1)
                throw ConfigError("multiplicity must be a positive integer");
            zs.add(Complex(re, im), static_cast<int>(mult));
        } catch (const ConfigError& e) {
            throw ConfigError("zeros CSV line " + std::to_string(lineno) + ": " +
                              e.what());
        }
    }
    return zs;
}

} // namespace flab
