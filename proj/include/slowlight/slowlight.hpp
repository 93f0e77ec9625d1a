#ifndef SLOWLIGHT_SLOWLIGHT_HPP
#define SLOWLIGHT_SLOWLIGHT_HPP

#include "slowlight/config.hpp"
#include "slowlight/constants.hpp"
#include "slowlight/csvio.hpp"
#include "slowlight/dispersion.hpp"
#include "slowlight/ensemble.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/faddeeva.hpp"
#include "slowlight/fft.hpp"
#include "slowlight/grid.hpp"
#include "slowlight/polarimetry.hpp"
#include "slowlight/runners.hpp"
#include "slowlight/vapor.hpp"
#include "slowlight/wavepacket.hpp"

#endif
