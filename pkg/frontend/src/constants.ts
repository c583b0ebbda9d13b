/** Closed-form constants of the solitary-wave family, drawn as reference lines. */

/** Value of the squared norm ratio f^2 at the ground state: 8*pi/3. */
export const F_SQUARED_AT_GROUND_STATE = (8 * Math.PI) / 3;

/** Mass of the ground state (the critical mass): 4*pi. */
export const CRITICAL_MASS = 4 * Math.PI;

/** Upper bound for the norm ratio f at critical mass: sqrt(4*pi). */
export const F_UPPER_AT_CRITICAL_MASS = Math.sqrt(4 * Math.PI);

/** Lower bound for f along the family: 2 * 3^(-3/4) * sqrt(2*pi). */
export const F_LOWER_BOUND = 2 * Math.pow(3, -0.75) * Math.sqrt(2 * Math.PI);

/** Half-width of the flatness band drawn around 8*pi/3 on the f-trace. */
export const F_SQUARED_BAND = 1e-3;

/** Relative-drift guide level on the drift figure. */
export const DRIFT_GUIDE = 1e-6;

/** A labeled horizontal reference line. */
export interface ReferenceLine {
  value: number;
  label: string;
}

/** The default labeled reference constants attached to every plot spec. */
export function defaultReferences(): ReferenceLine[] {
  return [
    { value: F_SQUARED_AT_GROUND_STATE, label: "8π/3" },
    { value: CRITICAL_MASS, label: "4π" },
    { value: F_UPPER_AT_CRITICAL_MASS, label: "√(4π)" },
  ];
}
