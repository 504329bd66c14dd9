#include "envsieve/errors.hpp"

namespace envsieve {

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::usage: return 2;
    case ErrorKind::hypothesis: return 3;
    case ErrorKind::budget: return 4;
    case ErrorKind::io: return 1;
    }
    return 1;
}

}  // namespace envsieve
