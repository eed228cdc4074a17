#include "perfval/report.hpp"

#include <sstream>

namespace perfval {

std::string json_escape(const std::string& s) {
    std::ostringstream os;
    for (char c : s) {
        switch (c) {
            case '"': os << "\\\""; break;
            case '\\': os << "\\\\"; break;
            case '\n': os << "\\n"; break;
            case '\t': os << "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    os << buf;
                } else {
                    os << c;
                }
        }
    }
    return os.str();
}

std::string CheckReport::json() const {
    std::ostringstream os;
    os << "{\"claim\":\"" << json_escape(claim) << "\",\"lhs\":\"" << json_escape(lhs)
       << "\",\"rhs\":\"" << json_escape(rhs) << "\",\"verdict\":\"" << verdict_name(verdict)
       << "\",\"witness\":\"" << json_escape(witness) << "\"}";
    return os.str();
}

std::string reports_json(const std::vector<CheckReport>& rs) {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < rs.size(); ++i) {
        if (i) os << ',';
        os << rs[i].json();
    }
    os << ']';
    return os.str();
}

}  // namespace perfval
