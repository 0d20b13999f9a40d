#pragma once

// Umbrella header for the padic_lfn library.

#include "padic_lfn/arith.hpp"
#include "padic_lfn/config.hpp"
#include "padic_lfn/dirichlet.hpp"
#include "padic_lfn/errors.hpp"
#include "padic_lfn/lseries.hpp"
#include "padic_lfn/modular.hpp"
#include "padic_lfn/padic.hpp"
#include "padic_lfn/quadrature.hpp"
#include "padic_lfn/scalar.hpp"
#include "padic_lfn/selftest.hpp"
#include "padic_lfn/twist.hpp"
#include "padic_lfn/wavelet.hpp"
