#pragma once

// Everything: lengths, Jacobians, L_c checks, the 2 x N identity, fixtures, I/O.

#include "seplen/critical.hpp"
#include "seplen/gallery.hpp"
#include "seplen/hilbert.hpp"
#include "seplen/io.hpp"
#include "seplen/jacobian.hpp"
#include "seplen/lengths.hpp"
#include "seplen/twon.hpp"
