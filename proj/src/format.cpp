#include "indexdensity/format.hpp"

#include <ios>

#include "indexdensity/error.hpp"

namespace indexdensity {

std::string format_significant(const Real& value, unsigned significant, DisplayMode mode) {
    if (significant == 0 || significant > 60) throw Error(ErrorCode::InvalidArgument, "significant digits out of range");
    if (value == 0) return "0";
    const bool negative = value < 0;
    // d.ddd...e+XX with ample guard digits
    const std::string sci = boost::multiprecision::abs(value).str(significant + 20, std::ios::scientific);
    const auto epos = sci.find('e');
    std::string digits;
    for (std::size_t i = 0; i < epos; ++i)
        if (sci[i] != '.') digits.push_back(sci[i]);
    int exponent = std::stoi(sci.substr(epos + 1));

    std::string kept = digits.substr(0, significant);
    if (mode == DisplayMode::Round) {
        const std::string rest = digits.substr(significant);
        bool up = false;
        if (rest[0] > '5') up = true;
        else if (rest[0] == '5') {
            const bool tail = rest.find_first_not_of('0', 1) != std::string::npos;
            up = tail || (kept.back() - '0') % 2 == 1;
        }
        if (up) {
            int i = static_cast<int>(kept.size()) - 1;
            while (i >= 0 && kept[i] == '9') kept[i--] = '0';
            if (i >= 0) ++kept[i];
            else {
                kept.insert(kept.begin(), '1');
                kept.pop_back();
                ++exponent;
            }
        }
    }

    std::string out = negative ? "-" : "";
    if (exponent < 0) {
        out += "0.";
        out.append(static_cast<std::size_t>(-exponent - 1), '0');
        out += kept;
    } else if (static_cast<unsigned>(exponent) + 1 >= kept.size()) {
        out += kept;
        out.append(exponent + 1 - kept.size(), '0');
    } else {
        out += kept.substr(0, exponent + 1) + "." + kept.substr(exponent + 1);
    }
    return out;
}

}  // namespace indexdensity
