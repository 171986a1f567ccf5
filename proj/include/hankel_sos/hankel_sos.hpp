#pragma once

// Convenience umbrella: the whole library in one include.

#include "hankel_sos/certificate.hpp"
#include "hankel_sos/critical.hpp"
#include "hankel_sos/errors.hpp"
#include "hankel_sos/feasibility.hpp"
#include "hankel_sos/generating.hpp"
#include "hankel_sos/gram.hpp"
#include "hankel_sos/io.hpp"
#include "hankel_sos/linalg.hpp"
#include "hankel_sos/monomials.hpp"
#include "hankel_sos/rng.hpp"
