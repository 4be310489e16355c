#pragma once

// Umbrella header: exact arithmetic for deciding whether the coefficient
// sequence of a rational power series is identically the d-th power of an
// exponential polynomial, constructing the root over a tower of radical
// extensions when it is and searching for a prime-progression certificate
// when it is not.

#include "hroot/bigint.hpp"
#include "hroot/certify.hpp"
#include "hroot/config.hpp"
#include "hroot/error.hpp"
#include "hroot/exppoly.hpp"
#include "hroot/factor_nf.hpp"
#include "hroot/factor_q.hpp"
#include "hroot/fields.hpp"
#include "hroot/hadamard.hpp"
#include "hroot/interval.hpp"
#include "hroot/json_io.hpp"
#include "hroot/laurent.hpp"
#include "hroot/modpoly.hpp"
#include "hroot/multgroup.hpp"
#include "hroot/number_field.hpp"
#include "hroot/power.hpp"
#include "hroot/unipoly.hpp"
#include "hroot/zlinalg.hpp"
#include "hroot/zpoly.hpp"
