#pragma once

#include "weilforge/error.hpp"
#include "weilforge/numth.hpp"
#include "weilforge/modpoly.hpp"
#include "weilforge/intpoly.hpp"
#include "weilforge/surd.hpp"
#include "weilforge/weilcore.hpp"
#include "weilforge/asymptotics.hpp"
#include "weilforge/surfaces.hpp"
#include "weilforge/chebgen.hpp"
