/**
 * Typed errors mirroring the server's error codes, so callers can catch
 * the same failure classes the native API raises.
 */

export class SuiteError extends Error {
  readonly code: string;

  constructor(code: string, message: string) {
    super(`${code}: ${message}`);
    this.code = code;
    this.name = code;
  }
}

export class UnknownTask extends SuiteError {}
export class InvalidMode extends SuiteError {}
export class BadParam extends SuiteError {}
export class ActionShape extends SuiteError {}
export class ActionRange extends SuiteError {}
export class SteppedFinished extends SuiteError {}
export class BadRequest extends SuiteError {}
export class HandleClosed extends SuiteError {
  constructor(message: string) {
    super("HandleClosed", message);
  }
}
export class BadMagic extends SuiteError {}
export class SchemaMismatch extends SuiteError {}
export class TruncatedPayload extends SuiteError {}

const BY_CODE: Record<string, new (code: string, message: string) => SuiteError> = {
  UnknownTask,
  InvalidMode,
  BadParam,
  ActionShape,
  ActionRange,
  SteppedFinished,
  BadRequest,
  BadMagic,
  SchemaMismatch,
  TruncatedPayload,
};

export function errorFromResponse(code: string, message: string): SuiteError {
  const cls = BY_CODE[code];
  if (cls !== undefined) {
    return new cls(code, message);
  }
  return new SuiteError(code, message);
}
