#ifndef PVC_TESTS_UTIL_HPP
#define PVC_TESTS_UTIL_HPP

#include <sstream>
#include <string>

#include "pvc/instance.hpp"

namespace testutil {

inline pvc::PvcInstance pvc_from(const std::string& text) {
    std::istringstream in(text);
    return pvc::parse_pvc(in);
}

inline pvc::PecInstance pec_from(const std::string& text) {
    std::istringstream in(text);
    return pvc::parse_pec(in);
}

// Star with a capacity-2 center: three unit edges in one group, all required.
inline const char* kStarSoft =
    "pvc 4 3 1 soft\n"
    "v 0 1 2\nv 1 1 1\nv 2 1 1\nv 3 1 1\n"
    "e 0 1 0 1\ne 1 1 0 2\ne 2 1 0 3\n"
    "t 1 3\n";

inline const char* kStarHard =
    "pvc 4 3 1 hard\n"
    "v 0 1 2\nv 1 1 1\nv 2 1 1\nv 3 1 1\n"
    "e 0 1 0 1\ne 1 1 0 2\ne 2 1 0 3\n"
    "t 1 3\n";

// Six vertices in three groups, one required cover per group; optimum 5.
inline const char* kThreeGroupPec =
    "pec 6 6 3\n"
    "v 0 1\nv 1 1\nv 2 1\nv 3 2\nv 4 2\nv 5 3\n"
    "e 0 0 3 11\ne 1 3 1 2\ne 2 1 2 5\ne 3 3 4 7\ne 4 2 5 6\ne 5 1 5 3\n"
    "t 1 1\nt 2 1\nt 3 1\n";

}  // namespace testutil

#endif
